#include "qit/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qit/gates.hpp"

namespace qit {
namespace algo {

namespace {

using std::numbers::pi;
const cplx I_(0.0, 1.0);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

// ---------------------------------------------------------------------
// Oracles

void BooleanOracle::apply(StateVector& s) {
    if (s.local_dim() != 2 || s.num_sites() != n_ + m_)
        throw std::invalid_argument("oracle register must have n+m qubits");
    ++queries_;
    auto amps = s.amplitudes();
    const std::uint64_t m_dim = 1ull << m_;
    for (std::uint64_t x = 0; x < (1ull << n_); ++x) {
        const std::uint64_t fx = f_(x) & (m_dim - 1);
        if (fx == 0) continue;
        cplx* block = amps.data() + x * m_dim;
        for (std::uint64_t y = 0; y < m_dim; ++y) {
            const std::uint64_t y2 = y ^ fx;
            if (y < y2) std::swap(block[y], block[y2]);
        }
    }
}

// ---------------------------------------------------------------------
// Deutsch-Jozsa

DjResult deutsch_jozsa(BooleanOracle& f, Rng& rng) {
    const int n = f.input_bits();
    if (f.output_bits() != 1) throw std::invalid_argument("deutsch_jozsa needs a 1-bit oracle");
    StateVector s = StateVector::basis(2, n + 1, 1);  // |0...0>|1>
    const auto h = gates::standard_gate("H");
    for (int q = 0; q <= n; ++q) s = apply_unitary(s, h.matrix, std::vector<int>{q});
    f.apply(s);
    for (int q = 1; q <= n; ++q) s = apply_unitary(s, h.matrix, std::vector<int>{q});
    std::vector<int> source(n);
    for (int i = 0; i < n; ++i) source[i] = i + 1;
    MeasurementRecord rec = measure(s, source, rng);
    return DjResult{rec.outcome_index == 0 ? DjVerdict::Constant : DjVerdict::Balanced,
                    rec.outcome_index, f.query_count()};
}

// ---------------------------------------------------------------------
// GF(2) elimination

std::vector<std::uint64_t> gf2_nullspace(const std::vector<std::uint64_t>& rows, int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("gf2_nullspace: n out of range");
    // Row reduce; remember which column each pivot lives in.
    std::vector<std::uint64_t> reduced;
    std::vector<int> pivot_col;
    for (std::uint64_t row : rows) {
        for (std::size_t i = 0; i < reduced.size(); ++i)
            if (row >> pivot_col[i] & 1) row ^= reduced[i];
        if (row == 0) continue;
        const int col = 63 - std::countl_zero(row);
        for (std::size_t i = 0; i < reduced.size(); ++i)
            if (reduced[i] >> col & 1) reduced[i] ^= row;
        reduced.push_back(row);
        pivot_col.push_back(col);
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<std::uint64_t> basis;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::uint64_t v = 1ull << free_col;
        // Each pivot row fixes its pivot bit from the free bits.
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            const std::uint64_t others = reduced[i] & ~(1ull << pivot_col[i]);
            if (std::popcount(others & v) & 1) v |= 1ull << pivot_col[i];
        }
        basis.push_back(v);
    }
    return basis;
}

// ---------------------------------------------------------------------
// Simon

SimonResult simon(BooleanOracle& f, Rng& rng) {
    const int n = f.input_bits();
    if (f.output_bits() != n) throw std::invalid_argument("simon needs an n-bit oracle");
    const auto h = gates::standard_gate("H");

    SimonResult result{};
    std::vector<std::uint64_t> rows;
    std::vector<std::uint64_t> echelon;
    auto insert_row = [&](std::uint64_t y) {
        for (std::uint64_t r : echelon) y = std::min(y, y ^ r);
        if (y) echelon.push_back(y);
    };

    const int budget = 10 * n;
    for (int round = 0; round < budget && echelon.size() + 1 < static_cast<std::size_t>(n);
         ++round) {
        StateVector s = StateVector::zero(2, 2 * n);
        for (int q = n; q < 2 * n; ++q) s = apply_unitary(s, h.matrix, std::vector<int>{q});
        f.apply(s);
        for (int q = n; q < 2 * n; ++q) s = apply_unitary(s, h.matrix, std::vector<int>{q});
        std::vector<int> source(n);
        for (int i = 0; i < n; ++i) source[i] = n + i;
        MeasurementRecord rec = measure(s, source, rng);
        const std::uint64_t y = rec.outcome_index;
        result.samples.push_back(y);
        rows.push_back(y);
        insert_row(y);
    }
    if (echelon.size() + 1 < static_cast<std::size_t>(n))
        throw std::runtime_error("simon: sampling budget exhausted before rank n-1");

    const auto null_basis = gf2_nullspace(rows, n);
    if (null_basis.size() != 1)
        throw std::runtime_error("simon: inconsistent linear system (broken promise?)");
    const std::uint64_t p = null_basis[0];
    if (p == 0 || f.classical_eval(0) != f.classical_eval(p))
        throw std::runtime_error("simon: recovered period fails f(0) = f(p) (broken promise)");
    result.period = p;
    result.queries = f.query_count();
    return result;
}

// ---------------------------------------------------------------------
// Grover

GroverParams GroverParams::phase(double phi) {
    GroverParams p;
    p.beta = std::exp(I_ * phi);
    p.delta = std::exp(I_ * phi);
    return p;
}

std::vector<cplx> grover_reduced_kernel(double N, const GroverParams& p) {
    if (N < 2) throw std::invalid_argument("grover kernel needs N >= 2");
    const cplx beta = p.beta, delta = p.delta;
    const double root_nm1 = std::sqrt(N - 1.0);
    return {(1.0 + delta * (1.0 - N)) / N, -beta * (1.0 + delta) * root_nm1 / N,
            (1.0 + delta) * root_nm1 / N, beta * (1.0 + delta - N) / N};
}

GroverSpectrum grover_spectrum(double N, const GroverParams& p) {
    const cplx det = p.beta * p.delta;
    const cplx tr = -(p.beta + p.delta) + (1.0 + p.beta) * (1.0 + p.delta) / N;
    const cplx disc = std::sqrt(-det + 0.25 * tr * tr);
    GroverSpectrum s;
    s.zeta1 = 0.5 * tr - disc;
    s.zeta2 = 0.5 * tr + disc;
    s.delta_omega = std::arg(s.zeta2) - std::arg(s.zeta1);
    return s;
}

double grover_success_reduced(double N, const GroverParams& p, int m) {
    const auto k = grover_reduced_kernel(N, p);
    cplx v0 = 1.0 / std::sqrt(N), v1 = std::sqrt((N - 1.0) / N);
    for (int i = 0; i < m; ++i) {
        const cplx w0 = k[0] * v0 + k[1] * v1;
        const cplx w1 = k[2] * v0 + k[3] * v1;
        v0 = w0;
        v1 = w1;
    }
    return std::norm(v0);
}

GroverRun grover_search(int n_qubits, std::uint64_t x0, const GroverParams& p, int m, Rng& rng) {
    const std::uint64_t N = 1ull << n_qubits;
    if (x0 >= N) throw std::invalid_argument("grover_search: marked item out of range");
    std::vector<cplx> uniform(N, cplx(1.0 / std::sqrt(static_cast<double>(N)), 0));
    StateVector s(2, n_qubits, std::move(uniform));

    for (int it = 0; it < m; ++it) {
        auto a = s.amplitudes();
        // G1 = -P_{x0} + beta Q_{x0}
        const cplx marked = a[x0];
        for (auto& v : a) v *= p.beta;
        a[x0] = -marked;
        // G2 = -Pbar + delta Qbar, a rank-1 update through the mean
        cplx sum(0, 0);
        for (const auto& v : a) sum += v;
        const cplx mean = sum / static_cast<double>(N);
        for (auto& v : a) v = p.delta * v + (-1.0 - p.delta) * mean;
    }

    GroverRun run;
    run.success_probability = std::norm(s[x0]);
    std::vector<int> all(n_qubits);
    for (int i = 0; i < n_qubits; ++i) all[i] = i;
    run.sampled_outcome = measure(s, all, rng).outcome_index;
    return run;
}

namespace {
// Nearest integer, exact halves rounded down.
int nearest_int(double x) {
    const double f = std::floor(x + 0.5);
    if (f - x == 0.5) return static_cast<int>(f) - 1;
    return static_cast<int>(f);
}
}  // namespace

int grover_optimal_m(double N, double phi) {
    if (std::abs(phi) >= pi) throw std::invalid_argument("grover_optimal_m: |phi| < pi required");
    return nearest_int(pi / (4.0 * std::cos(phi / 2.0)) * std::sqrt(N));
}

int grover_exact_m(double N) {
    return nearest_int(0.5 * (pi / (2.0 * std::asin(1.0 / std::sqrt(N))) - 1.0));
}

// ---------------------------------------------------------------------
// Number theory

std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("mod_exp: N must be >= 1");
    std::uint64_t result = 1 % N;
    std::uint64_t base = a % N;
    while (x > 0) {
        if (x & 1) result = mul_mod(result, base, N);
        base = mul_mod(base, base, N);
        x >>= 1;
    }
    return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t N) {
    if (std::gcd(a, N) != 1) throw std::invalid_argument("order: gcd(a, N) != 1");
    std::uint64_t cur = a % N, r = 1;
    while (cur != 1) {
        cur = mul_mod(cur, a, N);
        ++r;
        if (r > N) throw std::runtime_error("order: no cycle found (internal error)");
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t c, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(c % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

namespace {
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace

std::optional<std::uint64_t> prime_power_root(std::uint64_t N) {
    if (N < 4) return std::nullopt;
    const int max_k = static_cast<int>(std::floor(std::log2(static_cast<double>(N)))) + 1;
    for (int k = 2; k <= max_k; ++k) {
        const double guess = std::pow(static_cast<double>(N), 1.0 / k);
        for (std::uint64_t cand = std::max<std::uint64_t>(
                 2, static_cast<std::uint64_t>(guess) - 1);
             cand <= static_cast<std::uint64_t>(guess) + 1; ++cand) {
            std::uint64_t pw = 1;
            bool overflow = false;
            for (int i = 0; i < k; ++i) {
                if (pw > N / cand) {
                    overflow = true;
                    break;
                }
                pw *= cand;
            }
            if (!overflow && pw == N && is_prime_u64(cand)) return cand;
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> continued_fraction_terms(std::uint64_t q, std::uint64_t Q) {
    if (Q == 0) throw std::invalid_argument("continued fraction: Q must be positive");
    std::vector<std::uint64_t> terms;
    std::uint64_t num = q, den = Q;
    for (;;) {
        terms.push_back(num / den);
        const std::uint64_t rem = num % den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    return terms;
}

std::vector<Fraction> continued_fraction_convergents(std::uint64_t q, std::uint64_t Q) {
    const auto terms = continued_fraction_terms(q, Q);
    std::vector<Fraction> out;
    std::uint64_t h_prev = 1, h_prev2 = 0;  // h_{-1}, h_{-2}
    std::uint64_t k_prev = 0, k_prev2 = 1;  // k_{-1}, k_{-2}
    for (std::uint64_t a : terms) {
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        out.push_back(Fraction{h, k});
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

std::optional<Fraction> best_order_convergent(std::uint64_t q, std::uint64_t Q,
                                              std::uint64_t bound) {
    std::optional<Fraction> best;
    for (const Fraction& f : continued_fraction_convergents(q, Q)) {
        if (f.den == 0 || f.den >= bound) continue;
        // |q/Q - h/k| <= 1/(2Q)  <=>  2 |q k - h Q| <= k
        const auto lhs = static_cast<unsigned __int128>(q) * f.den;
        const auto rhs = static_cast<unsigned __int128>(f.num) * Q;
        const unsigned __int128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
        if (2 * diff <= f.den) best = f;  // denominators grow; keep the last match
    }
    return best;
}

// ---------------------------------------------------------------------
// Shor

namespace {

// Geometric weight |sum_{k<B} e^{2 pi i t k / Q}|^2. The product t*B is
// reduced mod 2Q exactly before the sine to keep precision for huge B.
double dirichlet_weight(std::uint64_t t, std::uint64_t B, std::uint64_t Q) {
    if (t % Q == 0) return static_cast<double>(B) * static_cast<double>(B);
    const auto two_q = 2 * static_cast<unsigned __int128>(Q);
    const std::uint64_t tb =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(t) * B % two_q);
    const double num = std::sin(pi * static_cast<double>(tb) / static_cast<double>(Q));
    const double den = std::sin(pi * static_cast<double>(t) / static_cast<double>(Q));
    return (num * num) / (den * den);
}

// prob(q) depends on q only through t = q r mod Q. B_j takes two values;
// count how many j give each.
double prob_from_t(std::uint64_t t, std::uint64_t r, std::uint64_t Q) {
    const std::uint64_t b_hi = (Q - 1) / r + 1;
    const std::uint64_t count_hi = (Q - 1) % r + 1;
    const std::uint64_t count_lo = r - count_hi;
    double p = static_cast<double>(count_hi) * dirichlet_weight(t, b_hi, Q);
    if (count_lo > 0) p += static_cast<double>(count_lo) * dirichlet_weight(t, b_hi - 1, Q);
    return p / (static_cast<double>(Q) * static_cast<double>(Q));
}

}  // namespace

double shor_prob_q(std::uint64_t q, std::uint64_t r, std::uint64_t Q) {
    if (q >= Q || r == 0) throw std::invalid_argument("shor_prob_q: need q < Q, r >= 1");
    return prob_from_t(mul_mod(q, r, Q), r, Q);
}

std::uint64_t shor_sample_q(std::uint64_t r, std::uint64_t Q, Rng& rng) {
    const std::uint64_t g = std::gcd(r, Q);
    const std::uint64_t qp = Q / g, rp = r / g;
    const std::uint64_t inv_rp = mod_inverse(rp % qp, qp);

    // Walk t = q r mod Q over multiples of g outward from 0; each t value
    // is hit by exactly g values of q, so P(t) = g * prob_from_t(t).
    const double gf = static_cast<double>(g);
    const double u = rng.next_double();
    double acc = gf * prob_from_t(0, r, Q);
    std::uint64_t chosen_t = 0;
    bool found = u < acc;
    for (std::uint64_t k = 1; k <= qp / 2 && !found; ++k) {
        const std::uint64_t t1 = k * g;
        acc += gf * prob_from_t(t1, r, Q);
        if (u < acc) {
            chosen_t = t1;
            found = true;
            break;
        }
        const std::uint64_t t2 = Q - k * g;
        if (t2 == t1) break;
        acc += gf * prob_from_t(t2, r, Q);
        if (u < acc) {
            chosen_t = t2;
            found = true;
        }
    }
    if (!found) chosen_t = (qp / 2) * g;  // numerical tail, mass ~ ulp

    const std::uint64_t q0 = mul_mod(chosen_t / g % qp, inv_rp, qp);
    const std::uint64_t m = (g > 1) ? rng.next_below(g) : 0;
    return q0 + m * qp;
}

ShorContext ShorContext::make(std::uint64_t N, std::uint64_t a) {
    if (N < 3 || N % 2 == 0) throw std::invalid_argument("shor: N must be odd and >= 3");
    if (a < 2 || a >= N || std::gcd(a, N) != 1)
        throw std::invalid_argument("shor: need 1 < a < N with gcd(a, N) = 1");
    ShorContext ctx;
    ctx.N = N;
    ctx.a = a;
    const unsigned __int128 n2 = static_cast<unsigned __int128>(N) * N;
    int K = 1;
    while ((static_cast<unsigned __int128>(1) << K) <= n2) ++K;
    ctx.K = K;
    ctx.Q = 1ull << K;
    return ctx;
}

std::vector<double> shor_statevector_distribution(const ShorContext& ctx) {
    int T = 1;
    while ((1ull << T) < ctx.N) ++T;
    if (ctx.K + T > 14)
        throw std::invalid_argument("shor state-vector backend: register exceeds the 2^14 cap");

    const std::uint64_t t_dim = 1ull << T;
    std::vector<cplx> amps(ctx.Q * t_dim, cplx(0, 0));
    const double w = 1.0 / std::sqrt(static_cast<double>(ctx.Q));
    std::uint64_t pw = 1 % ctx.N;
    for (std::uint64_t q = 0; q < ctx.Q; ++q) {
        amps[q * t_dim + pw] = w;
        pw = mul_mod(pw, ctx.a, ctx.N);
    }
    StateVector s(2, ctx.K + static_cast<int>(T), std::move(amps));
    s = gates::run(gates::qft_circuit(ctx.K, 2), s, static_cast<int>(T));

    std::vector<int> source(ctx.K);
    for (int i = 0; i < ctx.K; ++i) source[i] = static_cast<int>(T) + i;
    return outcome_distribution(s, source);
}

ShorOrderResult shor_order(const ShorContext& ctx, ShorBackend backend, Rng& rng,
                           int max_rounds) {
    ShorOrderResult result;

    std::vector<double> cdf;
    std::uint64_t true_r = 0;
    if (backend == ShorBackend::StateVector) {
        const auto dist = shor_statevector_distribution(ctx);
        cdf.resize(dist.size());
        double acc = 0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            acc += dist[i];
            cdf[i] = acc;
        }
    } else {
        true_r = multiplicative_order(ctx.a, ctx.N);
    }

    std::uint64_t accumulated = 1;
    for (int round = 0; round < max_rounds; ++round) {
        result.rounds = round + 1;
        std::uint64_t q;
        if (backend == ShorBackend::StateVector) {
            const double u = rng.next_double();
            q = static_cast<std::uint64_t>(
                std::distance(cdf.begin(), std::upper_bound(cdf.begin(), cdf.end(), u)));
            if (q >= ctx.Q) q = ctx.Q - 1;
        } else {
            q = shor_sample_q(true_r, ctx.Q, rng);
        }
        result.q_draws.push_back(q);
        if (q == 0) continue;

        const auto conv = best_order_convergent(q, ctx.Q, ctx.N);
        if (!conv || conv->den == 0) continue;
        accumulated = std::lcm(accumulated, conv->den);
        for (std::uint64_t mult = 1; mult <= 8; ++mult) {
            const std::uint64_t cand = accumulated * mult;
            if (cand >= ctx.N) break;
            if (mod_exp(ctx.a, cand, ctx.N) == 1) {
                result.order = cand;
                return result;
            }
        }
    }
    throw std::runtime_error("shor_order: retry budget exhausted (uninformative draws)");
}

FactorAttempt factor_with_base(std::uint64_t N, std::uint64_t a, ShorBackend backend, Rng& rng) {
    FactorAttempt att;
    att.a = a;
    const std::uint64_t g = std::gcd(a, N);
    if (g != 1) {  // lucky draw: a already shares a factor with N
        att.f1 = g;
        att.f2 = N / g;
        return att;
    }
    const ShorContext ctx = ShorContext::make(N, a);
    att.order = shor_order(ctx, backend, rng).order;
    if (att.order % 2 == 1) {
        att.failure = FactorFailure::OrderOdd;
        return att;
    }
    const std::uint64_t half = mod_exp(a, att.order / 2, N);
    att.f1 = std::gcd(half - 1, N);
    att.f2 = std::gcd(half + 1, N);
    if (half == N - 1) att.failure = FactorFailure::SqrtIsMinusOne;
    return att;
}

FactorResult factor(std::uint64_t N, Rng& rng, ShorBackend backend, int budget) {
    if (N < 3 || N % 2 == 0) throw std::invalid_argument("factor: N must be odd and >= 3");
    FactorResult res;
    if (const auto p = prime_power_root(N)) {
        res.success = true;
        res.f1 = *p;
        res.f2 = N / *p;
        return res;
    }
    for (int i = 0; i < budget; ++i) {
        const std::uint64_t a = 2 + rng.next_below(N - 3);
        FactorAttempt att;
        try {
            att = factor_with_base(N, a, backend, rng);
        } catch (const std::runtime_error&) {
            continue;  // uninformative sampling round; retry with a fresh base
        }
        res.attempts.push_back(att);
        if (att.failure == FactorFailure::None && att.f1 > 1 && att.f1 < N) {
            res.success = true;
            res.f1 = std::min(att.f1, att.f2);
            res.f2 = std::max(att.f1, att.f2);
            return res;
        }
    }
    return res;
}

}  // namespace algo
}  // namespace qit
