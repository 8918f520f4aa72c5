// Generated by scripts/gen_rs_coeffs.py -- do not edit by hand.
//
// Chebyshev series (in x = 2p - 1, p the fractional part of
// sqrt(t/(2 pi))) for the Riemann-Siegel correction functions
// C_0..C_4.  See the script for how they are derived and validated.
#pragma once

#include <array>

namespace zdl::detail {

inline constexpr std::array<double, 30> kRsC0 = {
    6.42667286239768432e-01,
    9.58499728275006087e-19,
    2.71972999997855069e-01,
    -2.88423994445151990e-19,
    1.07386058193402849e-02,
    1.02501120948202596e-19,
    -1.37438152963366140e-03,
    -2.06840651592815520e-20,
    -1.24682218803206764e-04,
    7.60495636491382939e-22,
    -5.76459970678305002e-07,
    8.82902506825094974e-22,
    2.72806742958045250e-07,
    -2.29133183094088274e-22,
    8.07795305950047575e-09,
    8.54566558578390708e-24,
    -2.08846080688697440e-10,
    3.85205603619017150e-24,
    -1.31155618547395649e-11,
    -2.12773381990226397e-25,
    -1.42079872280769177e-14,
    -3.20250525988996109e-26,
    1.02717013579313856e-14,
    9.59909487359601812e-28,
    1.39745988195135883e-16,
    1.39310547850312181e-28,
    -4.48411873395326917e-18,
    -1.16393756544271278e-30,
    -1.18305995738339256e-19,
    -3.29724744462283256e-31,
};

inline constexpr std::array<double, 31> kRsC1 = {
    1.55165933594213556e-17,
    1.06979139210022379e-02,
    2.72862673992046559e-17,
    1.71706512433781149e-02,
    -4.43773014197214517e-18,
    2.79321114978838946e-03,
    2.23514548944889669e-18,
    -3.63756537192585857e-05,
    -7.81534734172748570e-19,
    -2.71089552311514943e-05,
    1.57564078379176645e-19,
    -1.04837498667597940e-06,
    -8.12855266837417157e-21,
    5.88646716654579642e-08,
    -3.86521020319752155e-21,
    4.32296726849597229e-09,
    6.75093746831111695e-22,
    -1.13695915913362528e-11,
    2.36390365016697370e-23,
    -6.69983391018602037e-12,
    -7.64459601657403984e-24,
    -1.00799976502628483e-13,
    -1.21013859321813044e-25,
    5.15248800845823900e-15,
    3.57049314972836578e-26,
    1.52169544607637644e-16,
    5.24585219244929330e-28,
    -1.86194648244052528e-18,
    -8.76642125496680607e-29,
    -1.13018461579997571e-19,
    -1.49077185681837689e-30,
};

inline constexpr std::array<double, 28> kRsC2 = {
    3.14611585398506246e-03,
    2.23447507412846705e-13,
    -2.30878388453817970e-03,
    -6.73146671255421437e-14,
    5.76982076680568524e-05,
    2.39111273962257058e-14,
    3.52388620236067883e-04,
    -4.82674930478919656e-15,
    2.52466674588967618e-05,
    1.78414005406894275e-16,
    -3.44282119723748307e-06,
    2.05678748247761622e-16,
    -3.53507455659478809e-07,
    -5.34222189630544274e-17,
    3.73083018476352512e-09,
    1.99827441229689253e-18,
    1.27769518622513452e-09,
    8.97305379302174578e-19,
    2.18746161996945799e-11,
    -4.96504638799153149e-20,
    -1.91414109441657730e-12,
    -7.45700318058359871e-21,
    -6.56288310069540260e-14,
    2.24009976544668989e-22,
    1.25860090866356768e-15,
    3.24357954000241741e-23,
    8.14007661771355672e-17,
    -2.72575512888128797e-25,
};

inline constexpr std::array<double, 31> kRsC3 = {
    4.23592302866636247e-13,
    7.12325307501726103e-05,
    9.44391867776880015e-13,
    2.32343062466550603e-04,
    -1.38482813422191161e-13,
    -1.29299123822816566e-04,
    7.20737235246445237e-14,
    1.80744970936893686e-05,
    -2.69054062256773998e-14,
    6.52618516200586363e-06,
    5.89007140884005934e-15,
    -1.16963682732648968e-07,
    -4.48761888045939349e-16,
    -7.34947537429939563e-08,
    -1.09119002814582438e-16,
    -1.77509128959531892e-09,
    2.41837546182750285e-17,
    2.55555169846806704e-10,
    2.18356390430417532e-19,
    1.13766435940001827e-11,
    -2.53369846481349007e-19,
    -3.34985340553171557e-13,
    1.31888932005824617e-21,
    -2.55374109012906364e-14,
    1.19207288536372014e-21,
    6.76604437504306741e-17,
    -6.38085739742006126e-24,
    2.97689231199403302e-17,
    -3.20162626353387822e-24,
    2.99532912005437483e-19,
    7.75022582055419684e-27,
};

inline constexpr std::array<double, 32> kRsC4 = {
    1.67657431345438355e-04,
    2.31856849347612962e-09,
    -2.27287749564212193e-04,
    -6.99547119899031978e-10,
    6.47738799211206517e-05,
    2.48316276566259902e-10,
    -8.49220481629702596e-06,
    -5.01436981713042481e-11,
    -2.61613901900145818e-06,
    1.86504114644193243e-12,
    8.33676099383537334e-07,
    2.13233977163121451e-12,
    6.32470775703435455e-08,
    -5.54344347893363160e-13,
    -1.00599437259449259e-08,
    2.07947045134992979e-14,
    -7.82269302199369451e-10,
    9.30269332070939569e-15,
    3.16765998337766174e-11,
    -5.15453396987101280e-16,
    3.50071002357249341e-12,
    -7.72865193357548160e-17,
    -1.43151819914219790e-14,
    2.32420895040089922e-18,
    -7.26947635313079784e-15,
    3.36152215297443132e-19,
    -8.78038961514390336e-17,
    -2.82591114222422165e-21,
    8.15046589846529797e-18,
    -7.97923937972132622e-22,
    1.92080408275024799e-19,
    -3.78277462893365769e-24,
};

}  // namespace zdl::detail
