#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

// Scalar reference math for the sampling kernels. The AVX2 lane code replays
// the exact operation sequence written here (every step is an elementwise
// IEEE-754 operation), so scalar and SIMD kernels must produce bit-identical
// outputs for the same inputs. Do not reorder or fuse operations in either
// copy without changing both.

namespace infoacq::kernels {

namespace coeff {

// log: rational fit on [sqrt(1/2), sqrt(2)) (Cephes-style), exact power-of-two
// split of ln 2 applied to the exponent.
inline constexpr double kLogP[6] = {
    1.01875663804580931796e-4, 4.97494994976747001425e-1,
    4.70579119878881725854e0,  1.44989225341610930846e1,
    1.79368678507819816313e1,  7.70838733755885391666e0};
inline constexpr double kLogQ[6] = {
    1.0,                       1.12873587189167450590e1,
    4.52279145837532221105e1,  8.29875266912776603211e1,
    7.11544750618563894466e1,  2.31251620126765340583e1};
inline constexpr double kLn2Hi = 0.693359375;
inline constexpr double kLn2Lo = 2.121944400546905827679e-4;
inline constexpr double kSqrtHalf = 0.70710678118654752440;

// Normal quantile: rational approximations on three regions (central,
// moderate tail, far tail), constant-first coefficient order.
inline constexpr double kNormA[8] = {
    3.3871328727963666080e0,  1.3314166789178437745e+2,
    1.9715909503065514427e+3, 1.3731693765509461125e+4,
    4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
inline constexpr double kNormB[8] = {
    1.0,                      4.2313330701600911252e+1,
    6.8718700749205790830e+2, 5.3941960214247511077e+3,
    2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
inline constexpr double kNormC[8] = {
    1.42343711074968357734e0,  4.63033784615654529590e0,
    5.76949722146069140550e0,  3.64784832476320460504e0,
    1.27045825245236838258e0,  2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
inline constexpr double kNormD[8] = {
    1.0,                       2.05319162663775882187e0,
    1.67638483018380384940e0,  6.89767334985100004550e-1,
    1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
inline constexpr double kNormE[8] = {
    6.65790464350110377720e0,  5.46378491116411436990e0,
    1.78482653991729133580e0,  2.96560571828504891230e-1,
    2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
inline constexpr double kNormF[8] = {
    1.0,                       5.99832206555887937690e-1,
    1.36929880922735805310e-1, 1.48753612908506148525e-2,
    7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

}  // namespace coeff

// Degree-7 polynomial, constant-first coefficients, plain Horner (no FMA).
inline double poly8(const double* k, double t) {
  double acc = k[7];
  for (int i = 6; i >= 0; --i) acc = acc * t + k[i];
  return acc;
}

// Degree-5 variant for the log fit.
inline double poly6(const double* k, double t) {
  double acc = k[0];
  for (int i = 1; i < 6; ++i) acc = acc * t + k[i];
  return acc;
}

// Natural log for normal positive arguments well away from overflow; the
// draws feed values in [2^-53, 1).
inline double log_core(double x) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  int e = static_cast<int>((bits >> 52) & 0x7ff) - 1022;
  double m = std::bit_cast<double>((bits & 0x000fffffffffffffULL) |
                                   0x3fe0000000000000ULL);  // m in [0.5, 1)
  if (m < coeff::kSqrtHalf) {
    m = m + m;
    e -= 1;
  }
  const double ed = static_cast<double>(e);
  m = m - 1.0;
  const double z = m * m;
  double y = m * (z * (poly6(coeff::kLogP, m) / (poly6(coeff::kLogQ, m))));
  y = y - ed * coeff::kLn2Lo;
  y = y - 0.5 * z;
  double r = m + y;
  r = r + ed * coeff::kLn2Hi;
  return r;
}

// Inverse standard-normal CDF for u in (0,1).
inline double norm_quantile(double u) {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * (poly8(coeff::kNormA, r) / poly8(coeff::kNormB, r));
  }
  const double side = q < 0.0 ? u : 1.0 - u;
  const double s = std::sqrt(0.0 - log_core(side));
  double z;
  if (s <= 5.0) {
    const double t = s - 1.6;
    z = poly8(coeff::kNormC, t) / poly8(coeff::kNormD, t);
  } else {
    const double t = s - 5.0;
    z = poly8(coeff::kNormE, t) / poly8(coeff::kNormF, t);
  }
  return q < 0.0 ? -z : z;
}

// Philox 4x32-10 block cipher. Each (seed, path, period, kind) key selects an
// independent draw, so streams never depend on evaluation order.
struct PhiloxOut {
  std::uint32_t w0, w1, w2, w3;
};

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline PhiloxOut philox4x32(std::uint64_t seed, std::uint64_t path,
                            std::uint32_t period, std::uint32_t kind) {
  std::uint32_t r0 = static_cast<std::uint32_t>(path);
  std::uint32_t r1 = static_cast<std::uint32_t>(path >> 32);
  std::uint32_t r2 = period;
  std::uint32_t r3 = kind;
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * r0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * r2;
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t n0 = hi1 ^ r1 ^ k0;
    const std::uint32_t n2 = hi0 ^ r3 ^ k1;
    r0 = n0;
    r1 = lo1;
    r2 = n2;
    r3 = lo0;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return {r0, r1, r2, r3};
}

// Uniform in (0,1) with 2^52 equally spaced values; never returns 0 or 1.
inline double uniform01(std::uint64_t bits) {
  const double d = static_cast<double>(bits >> 12);
  return (d + 0.5) * 0x1.0p-52;
}

// Draw kinds: one keyed stream per quantity so skipping a draw (e.g. no
// signal purchased) never shifts any other stream.
inline constexpr std::uint32_t kDrawInit = 0;    // theta_0
inline constexpr std::uint32_t kDrawShock = 1;   // AR(1) innovation
inline constexpr std::uint32_t kDrawSignal = 2;  // signal noise

inline double normal_draw(std::uint64_t seed, std::uint64_t path,
                          std::uint32_t period, std::uint32_t kind) {
  const PhiloxOut w = philox4x32(seed, path, period, kind);
  const std::uint64_t bits =
      static_cast<std::uint64_t>(w.w0) |
      (static_cast<std::uint64_t>(w.w1) << 32);
  return norm_quantile(uniform01(bits));
}

}  // namespace infoacq::kernels
