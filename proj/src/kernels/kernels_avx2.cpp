#include <immintrin.h>

#include "kernels_detail.hpp"

// AVX2 lanes of the kernels in kernels_detail.hpp. Each sel() there becomes a
// blend here, with identical operand order; every arithmetic step is an
// elementwise IEEE operation, so lane i of any vector below equals what the
// scalar core computes for the same input. The kernel test suite checks that
// equality bit for bit.

namespace infoacq::kernels {

namespace {

inline __m256d sel_pd(__m256d mask, __m256d a, __m256d b) {
  return _mm256_blendv_pd(b, a, mask);
}

inline __m256d poly8_pd(const double* k, __m256d t) {
  __m256d acc = _mm256_set1_pd(k[7]);
  for (int i = 6; i >= 0; --i)
    acc = _mm256_add_pd(_mm256_mul_pd(acc, t), _mm256_set1_pd(k[i]));
  return acc;
}

inline __m256d poly6_pd(const double* k, __m256d t) {
  __m256d acc = _mm256_set1_pd(k[0]);
  for (int i = 1; i < 6; ++i)
    acc = _mm256_add_pd(_mm256_mul_pd(acc, t), _mm256_set1_pd(k[i]));
  return acc;
}

inline __m256d log_core_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i eb = _mm256_and_si256(_mm256_srli_epi64(bits, 52),
                                _mm256_set1_epi64x(0x7ff));
  eb = _mm256_sub_epi64(eb, _mm256_set1_epi64x(1022));
  const __m256i pick = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  const __m128i e32 =
      _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(eb, pick));
  __m256d ed = _mm256_cvtepi32_pd(e32);
  const __m256i mb = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3fe0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mb);
  const __m256d lt =
      _mm256_cmp_pd(m, _mm256_set1_pd(coeff::kSqrtHalf), _CMP_LT_OQ);
  m = sel_pd(lt, _mm256_add_pd(m, m), m);
  ed = sel_pd(lt, _mm256_sub_pd(ed, _mm256_set1_pd(1.0)), ed);
  m = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
  const __m256d z = _mm256_mul_pd(m, m);
  const __m256d pn = poly6_pd(coeff::kLogP, m);
  const __m256d qn = poly6_pd(coeff::kLogQ, m);
  __m256d y = _mm256_mul_pd(m, _mm256_mul_pd(z, _mm256_div_pd(pn, qn)));
  y = _mm256_sub_pd(y, _mm256_mul_pd(ed, _mm256_set1_pd(coeff::kLn2Lo)));
  y = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(0.5), z));
  __m256d r = _mm256_add_pd(m, y);
  r = _mm256_add_pd(r, _mm256_mul_pd(ed, _mm256_set1_pd(coeff::kLn2Hi)));
  return r;
}

inline __m256d norm_quantile_pd(__m256d u) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d q = _mm256_sub_pd(u, _mm256_set1_pd(0.5));
  const __m256d r =
      _mm256_sub_pd(_mm256_set1_pd(0.180625), _mm256_mul_pd(q, q));
  const __m256d zc = _mm256_mul_pd(
      q, _mm256_div_pd(poly8_pd(coeff::kNormA, r), poly8_pd(coeff::kNormB, r)));
  const __m256d qneg = _mm256_cmp_pd(q, zero, _CMP_LT_OQ);
  const __m256d side =
      sel_pd(qneg, u, _mm256_sub_pd(_mm256_set1_pd(1.0), u));
  const __m256d s =
      _mm256_sqrt_pd(_mm256_sub_pd(zero, log_core_pd(side)));
  const __m256d near = _mm256_cmp_pd(s, _mm256_set1_pd(5.0), _CMP_LE_OQ);
  const __m256d t_near = _mm256_sub_pd(s, _mm256_set1_pd(1.6));
  const __m256d t_far = _mm256_sub_pd(s, _mm256_set1_pd(5.0));
  const __m256d z_near = _mm256_div_pd(poly8_pd(coeff::kNormC, t_near),
                                       poly8_pd(coeff::kNormD, t_near));
  const __m256d z_far = _mm256_div_pd(poly8_pd(coeff::kNormE, t_far),
                                      poly8_pd(coeff::kNormF, t_far));
  __m256d zt = sel_pd(near, z_near, z_far);
  const __m256d signmask = _mm256_set1_pd(-0.0);
  zt = sel_pd(qneg, _mm256_xor_pd(zt, signmask), zt);
  const __m256d absq = _mm256_andnot_pd(signmask, q);
  const __m256d central =
      _mm256_cmp_pd(absq, _mm256_set1_pd(0.425), _CMP_LE_OQ);
  return sel_pd(central, zc, zt);
}

inline __m128i mulhi_epu32(__m128i a, __m128i b) {
  const __m128i even = _mm_mul_epu32(a, b);
  const __m128i odd = _mm_mul_epu32(_mm_srli_epi64(a, 32), b);
  return _mm_blend_epi32(_mm_srli_epi64(even, 32), odd, 0b1010);
}

// Four independent Philox streams, one per lane.
inline __m256d normal4(__m128i path_lo, __m128i path_hi, std::uint32_t period,
                       std::uint32_t kind, __m128i key0, __m128i key1) {
  __m128i r0 = path_lo;
  __m128i r1 = path_hi;
  __m128i r2 = _mm_set1_epi32(static_cast<int>(period));
  __m128i r3 = _mm_set1_epi32(static_cast<int>(kind));
  __m128i k0 = key0;
  __m128i k1 = key1;
  const __m128i m0 = _mm_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m128i m1 = _mm_set1_epi32(static_cast<int>(kPhiloxM1));
  const __m128i w0 = _mm_set1_epi32(static_cast<int>(kPhiloxW0));
  const __m128i w1 = _mm_set1_epi32(static_cast<int>(kPhiloxW1));
  for (int round = 0; round < 10; ++round) {
    const __m128i lo0 = _mm_mullo_epi32(r0, m0);
    const __m128i hi0 = mulhi_epu32(r0, m0);
    const __m128i lo1 = _mm_mullo_epi32(r2, m1);
    const __m128i hi1 = mulhi_epu32(r2, m1);
    const __m128i n0 = _mm_xor_si128(_mm_xor_si128(hi1, r1), k0);
    const __m128i n2 = _mm_xor_si128(_mm_xor_si128(hi0, r3), k1);
    r0 = n0;
    r1 = lo1;
    r2 = n2;
    r3 = lo0;
    k0 = _mm_add_epi32(k0, w0);
    k1 = _mm_add_epi32(k1, w1);
  }
  const __m256i lo64 = _mm256_cvtepu32_epi64(r0);
  const __m256i hi64 = _mm256_cvtepu32_epi64(r1);
  const __m256i bits = _mm256_or_si256(lo64, _mm256_slli_epi64(hi64, 32));
  const __m256i k = _mm256_srli_epi64(bits, 12);
  // Exact u64 -> double for values below 2^52.
  const __m256d d = _mm256_sub_pd(
      _mm256_castsi256_pd(
          _mm256_or_si256(k, _mm256_set1_epi64x(0x4330000000000000LL))),
      _mm256_set1_pd(4503599627370496.0));
  const __m256d u = _mm256_mul_pd(_mm256_add_pd(d, _mm256_set1_pd(0.5)),
                                  _mm256_set1_pd(0x1.0p-52));
  return norm_quantile_pd(u);
}

void simulate_paths_avx2(const SimPlan& plan, std::uint64_t path_begin,
                         std::size_t n_paths, double* err) {
  const std::size_t main = n_paths & ~static_cast<std::size_t>(3);
  const __m128i key0 =
      _mm_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(plan.seed)));
  const __m128i key1 = _mm_set1_epi32(
      static_cast<int>(static_cast<std::uint32_t>(plan.seed >> 32)));
  const __m256d rho = _mm256_set1_pd(plan.rho);
  const __m256d sigma0 = _mm256_set1_pd(plan.sigma0);
  const __m256d sigma = _mm256_set1_pd(plan.sigma);
  for (std::size_t i = 0; i < main; i += 4) {
    const std::uint64_t p[4] = {path_begin + i, path_begin + i + 1,
                                path_begin + i + 2, path_begin + i + 3};
    const __m128i path_lo =
        _mm_setr_epi32(static_cast<int>(static_cast<std::uint32_t>(p[0])),
                       static_cast<int>(static_cast<std::uint32_t>(p[1])),
                       static_cast<int>(static_cast<std::uint32_t>(p[2])),
                       static_cast<int>(static_cast<std::uint32_t>(p[3])));
    const __m128i path_hi =
        _mm_setr_epi32(static_cast<int>(static_cast<std::uint32_t>(p[0] >> 32)),
                       static_cast<int>(static_cast<std::uint32_t>(p[1] >> 32)),
                       static_cast<int>(static_cast<std::uint32_t>(p[2] >> 32)),
                       static_cast<int>(static_cast<std::uint32_t>(p[3] >> 32)));
    __m256d theta = _mm256_mul_pd(
        sigma0, normal4(path_lo, path_hi, 0, kDrawInit, key0, key1));
    __m256d mean = _mm256_setzero_pd();
    for (int t = 1; t <= plan.horizon; ++t) {
      const std::size_t j = static_cast<std::size_t>(t - 1);
      const __m256d shock = _mm256_mul_pd(
          sigma, normal4(path_lo, path_hi, static_cast<std::uint32_t>(t),
                         kDrawShock, key0, key1));
      theta = _mm256_add_pd(_mm256_mul_pd(rho, theta), shock);
      const __m256d prior_mean = _mm256_mul_pd(rho, mean);
      if (plan.precision[j] > 0.0) {
        const __m256d noise = _mm256_mul_pd(
            _mm256_set1_pd(plan.noise_sd[j]),
            normal4(path_lo, path_hi, static_cast<std::uint32_t>(t),
                    kDrawSignal, key0, key1));
        const __m256d signal = _mm256_add_pd(theta, noise);
        const __m256d a =
            _mm256_mul_pd(prior_mean, _mm256_set1_pd(plan.inv_pred[j]));
        const __m256d b =
            _mm256_mul_pd(_mm256_set1_pd(plan.precision[j]), signal);
        mean = _mm256_mul_pd(_mm256_set1_pd(plan.post_var[j]),
                             _mm256_add_pd(a, b));
      } else {
        mean = prior_mean;
      }
      _mm256_storeu_pd(err + j * n_paths + i, _mm256_sub_pd(mean, theta));
    }
  }
  if (main < n_paths)
    detail::simulate_paths_range(plan, path_begin, main, n_paths, n_paths,
                                 err);
}

struct VecSweep {
  __m256d rho_sq, sigma_sq, c, delta;
  __m256d p_min, inv_step, node_top, top_slope, psi_top;
  __m256d zero, one, kmax, eps_scale, v_warm;
};

inline __m256d continuation_pd(const VecSweep& s, const double* psi,
                               __m256d arg) {
  const __m256d extrap = _mm256_add_pd(
      s.psi_top, _mm256_mul_pd(_mm256_sub_pd(arg, s.node_top), s.top_slope));
  __m256d t = _mm256_mul_pd(_mm256_sub_pd(arg, s.p_min), s.inv_step);
  t = sel_pd(_mm256_cmp_pd(t, s.zero, _CMP_GT_OQ), t, s.zero);
  __m256d kf = _mm256_round_pd(t, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  kf = sel_pd(_mm256_cmp_pd(kf, s.kmax, _CMP_LT_OQ), kf, s.kmax);
  const __m128i k = _mm256_cvttpd_epi32(kf);
  const __m256d w = _mm256_sub_pd(t, kf);
  const __m256d lo = _mm256_i32gather_pd(psi, k, 8);
  const __m256d hi =
      _mm256_i32gather_pd(psi, _mm_add_epi32(k, _mm_set1_epi32(1)), 8);
  const __m256d in_range =
      _mm256_add_pd(lo, _mm256_mul_pd(w, _mm256_sub_pd(hi, lo)));
  return sel_pd(_mm256_cmp_pd(arg, s.node_top, _CMP_GE_OQ), extrap, in_range);
}

inline __m256d minimand_pd(const VecSweep& s, const double* psi, __m256d v,
                           __m256d inv_p) {
  const __m256d info = _mm256_sub_pd(_mm256_div_pd(s.one, v), inv_p);
  const __m256d arg = _mm256_add_pd(_mm256_mul_pd(s.rho_sq, v), s.sigma_sq);
  const __m256d cont = continuation_pd(s, psi, arg);
  __m256d r = _mm256_mul_pd(s.c, info);
  r = _mm256_add_pd(v, r);
  const __m256d d = _mm256_mul_pd(s.delta, cont);
  return _mm256_add_pd(r, d);
}

void bellman_sweep_avx2(const SweepPlan& plan, const double* nodes,
                        const double* psi_in, double* psi_out,
                        double* greedy_v) {
  VecSweep s;
  s.rho_sq = _mm256_set1_pd(plan.rho_sq);
  s.sigma_sq = _mm256_set1_pd(plan.sigma_sq);
  s.c = _mm256_set1_pd(plan.c);
  s.delta = _mm256_set1_pd(plan.delta);
  s.p_min = _mm256_set1_pd(plan.p_min);
  s.inv_step = _mm256_set1_pd(plan.inv_step);
  s.node_top = _mm256_set1_pd(plan.node_top);
  s.top_slope = _mm256_set1_pd(plan.top_slope);
  s.psi_top = _mm256_set1_pd(psi_in[plan.n - 1]);
  s.zero = _mm256_setzero_pd();
  s.one = _mm256_set1_pd(1.0);
  s.kmax = _mm256_set1_pd(static_cast<double>(plan.n - 2));
  s.eps_scale = _mm256_set1_pd(1e-9);
  s.v_warm = _mm256_set1_pd(plan.v_warm);
  const __m256d inv_phi = _mm256_set1_pd(detail::kInvPhi);
  const __m256d inv_phi2 = _mm256_set1_pd(detail::kInvPhi2);

  const int main = plan.n & ~3;
  for (int i = 0; i < main; i += 4) {
    const __m256d p = _mm256_loadu_pd(nodes + i);
    const __m256d inv_p = _mm256_div_pd(s.one, p);
    const __m256d eps_v = _mm256_mul_pd(s.eps_scale, p);
    __m256d a = eps_v;
    __m256d b = p;
    __m256d w = _mm256_sub_pd(b, a);
    __m256d x1 = _mm256_add_pd(a, _mm256_mul_pd(inv_phi2, w));
    __m256d x2 = _mm256_add_pd(a, _mm256_mul_pd(inv_phi, w));
    __m256d g1 = minimand_pd(s, psi_in, x1, inv_p);
    __m256d g2 = minimand_pd(s, psi_in, x2, inv_p);
    for (int it = 0; it < detail::kGoldenIters; ++it) {
      const __m256d low = _mm256_cmp_pd(g1, g2, _CMP_LT_OQ);
      b = sel_pd(low, x2, b);
      a = sel_pd(low, a, x1);
      const __m256d x_keep = sel_pd(low, x1, x2);
      const __m256d g_keep = sel_pd(low, g1, g2);
      w = _mm256_sub_pd(b, a);
      const __m256d x_lo = _mm256_add_pd(a, _mm256_mul_pd(inv_phi2, w));
      const __m256d x_hi = _mm256_add_pd(a, _mm256_mul_pd(inv_phi, w));
      const __m256d x_new = sel_pd(low, x_lo, x_hi);
      const __m256d g_new = minimand_pd(s, psi_in, x_new, inv_p);
      x1 = sel_pd(low, x_new, x_keep);
      g1 = sel_pd(low, g_new, g_keep);
      x2 = sel_pd(low, x_keep, x_new);
      g2 = sel_pd(low, g_keep, g_new);
    }
    const __m256d left = _mm256_cmp_pd(g1, g2, _CMP_LT_OQ);
    __m256d v = sel_pd(left, x1, x2);
    __m256d gv = sel_pd(left, g1, g2);
    const __m256d g_corner = minimand_pd(s, psi_in, p, inv_p);
    __m256d better = _mm256_cmp_pd(g_corner, gv, _CMP_LT_OQ);
    v = sel_pd(better, p, v);
    gv = sel_pd(better, g_corner, gv);
    __m256d vw = s.v_warm;
    vw = sel_pd(_mm256_cmp_pd(vw, p, _CMP_LT_OQ), vw, p);
    vw = sel_pd(_mm256_cmp_pd(vw, eps_v, _CMP_GT_OQ), vw, eps_v);
    const __m256d g_warm = minimand_pd(s, psi_in, vw, inv_p);
    better = _mm256_cmp_pd(g_warm, gv, _CMP_LT_OQ);
    v = sel_pd(better, vw, v);
    gv = sel_pd(better, g_warm, gv);
    _mm256_storeu_pd(psi_out + i, gv);
    _mm256_storeu_pd(greedy_v + i, v);
  }
  if (main < plan.n)
    detail::bellman_sweep_range(plan, nodes, psi_in, psi_out, greedy_v, main,
                                plan.n);
}

}  // namespace

const KernelTable* avx2_table();

const KernelTable* avx2_table() {
  static const KernelTable table{simulate_paths_avx2, bellman_sweep_avx2,
                                 "avx2"};
  return &table;
}

}  // namespace infoacq::kernels
