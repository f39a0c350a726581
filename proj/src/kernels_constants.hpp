#pragma once
// Coefficients shared by the scalar and AVX2 kernels. Both backends must
// apply them in the same order for their results to agree bit for bit.

namespace cellcov::kernels::consts {

// exp: x = n ln2 + r, e^r = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2))
inline constexpr double kLog2e = 1.4426950408889634073599;
inline constexpr double kExpC1 = 6.93145751953125E-1;
inline constexpr double kExpC2 = 1.42860682030941723212E-6;
inline constexpr double kExpP0 = 1.26177193074810590878E-4;
inline constexpr double kExpP1 = 3.02994407707441961300E-2;
inline constexpr double kExpP2 = 9.99999999999999999910E-1;
inline constexpr double kExpQ0 = 3.00198505138664455042E-6;
inline constexpr double kExpQ1 = 2.52448340349684104192E-3;
inline constexpr double kExpQ2 = 2.27265548208155028766E-1;
inline constexpr double kExpQ3 = 2.00000000000000000009E0;
inline constexpr double kExpHi = 709.0;
inline constexpr double kExpLo = -708.0;

// log: x = m 2^e with m in [sqrt(1/2), sqrt(2)), log(1+f) = f - f^2/2 + f^3 P(f)/Q(f)
inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kLogP0 = 1.01875663804580931796E-4;
inline constexpr double kLogP1 = 4.97494994976747001425E-1;
inline constexpr double kLogP2 = 4.70579119878881725854E0;
inline constexpr double kLogP3 = 1.44989225341610930846E1;
inline constexpr double kLogP4 = 1.79368678507819816313E1;
inline constexpr double kLogP5 = 7.70838733755885391666E0;
inline constexpr double kLogQ0 = 1.12873587189167450590E1;
inline constexpr double kLogQ1 = 4.52279145837532221105E1;
inline constexpr double kLogQ2 = 8.29875266912776603211E1;
inline constexpr double kLogQ3 = 7.11544750618563894466E1;
inline constexpr double kLogQ4 = 2.31251620126765340583E1;
inline constexpr double kLn2Hi = 0.693359375;
inline constexpr double kLn2Lo = 2.121944400546905827679E-4;  // subtracted

inline constexpr int kLanes = 4;

}  // namespace cellcov::kernels::consts
