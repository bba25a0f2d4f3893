#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qit/state.hpp"

namespace qit {
namespace algo {

/// Black-box f: {0,1}^n -> {0,1}^m queried coherently as
/// |x>|y> -> |x>|y XOR f(x)>. query_count increments once per quantum
/// invocation.
class BooleanOracle {
  public:
    BooleanOracle(int input_bits, int output_bits,
                  std::function<std::uint64_t(std::uint64_t)> f)
        : n_(input_bits), m_(output_bits), f_(std::move(f)) {}

    int input_bits() const { return n_; }
    int output_bits() const { return m_; }
    std::uint64_t classical_eval(std::uint64_t x) const { return f_(x); }
    std::uint64_t query_count() const { return queries_; }

    /// Coherent query. The register packs the target (m low sites) below
    /// the source (n high sites).
    void apply(StateVector& s);

  private:
    int n_, m_;
    std::function<std::uint64_t(std::uint64_t)> f_;
    std::uint64_t queries_ = 0;
};

enum class DjVerdict { Constant, Balanced };

struct DjResult {
    DjVerdict verdict;
    std::uint64_t source_outcome;  // all-zeros iff constant
    std::uint64_t queries;
};

/// One-query constant-vs-balanced discrimination by full simulation of the
/// n+1 qubit circuit.
DjResult deutsch_jozsa(BooleanOracle& f, Rng& rng);

/// All x with row . x = 0 (mod 2) for every row; basis of the solution
/// space via elimination over F2.
std::vector<std::uint64_t> gf2_nullspace(const std::vector<std::uint64_t>& rows, int n);

struct SimonResult {
    std::uint64_t period;
    std::uint64_t queries;
    std::vector<std::uint64_t> samples;  // every y drawn; each satisfies y.p = 0
};

/// Recover the hidden period of a 2-to-1 oracle. Resamples until the
/// collected y's span an (n-1)-dimensional space or 10n rounds elapse;
/// throws if the system stays inconsistent past the budget.
SimonResult simon(BooleanOracle& f, Rng& rng);

// -- Grover --------------------------------------------------------------

/// Phase parameters of the two Grover reflections, alpha = gamma = -1
/// fixed. delta = e^{i phi}.
struct GroverParams {
    cplx beta{1.0, 0.0};
    cplx delta{1.0, 0.0};

    static GroverParams standard() { return {}; }
    static GroverParams phase(double phi);
};

/// Reduced 2x2 kernel on span{|x0>, |x_perp>} and its spectrum.
std::vector<cplx> grover_reduced_kernel(double N, const GroverParams& p);

struct GroverSpectrum {
    cplx zeta1, zeta2;     // unit-modulus eigenvalues
    double delta_omega;    // omega2 - omega1
};

GroverSpectrum grover_spectrum(double N, const GroverParams& p);

/// Success probability |<x0|K^m|x_in>|^2 from the reduced kernel.
double grover_success_reduced(double N, const GroverParams& p, int m);

struct GroverRun {
    double success_probability;
    std::uint64_t sampled_outcome;
};

/// Full state-vector run: m kernel applications on n qubits, then a
/// measurement of the register under the given seed.
GroverRun grover_search(int n_qubits, std::uint64_t x0, const GroverParams& p, int m, Rng& rng);

/// Iteration counts: the phase-family formula [pi/(4 cos(phi/2)) sqrt(N)]
/// and the exact geometric count [((pi / (2 asin(1/sqrt(N)))) - 1) / 2].
int grover_optimal_m(double N, double phi);
int grover_exact_m(double N);

// -- number theory -------------------------------------------------------

std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t N);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
/// Multiplicative order of a mod N by brute force (a and N coprime).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t N);
/// x with c x == 1 mod m, when gcd(c, m) = 1.
std::uint64_t mod_inverse(std::uint64_t c, std::uint64_t m);
/// Smallest prime p with N = p^k, when N is a perfect prime power.
std::optional<std::uint64_t> prime_power_root(std::uint64_t N);

struct Fraction {
    std::uint64_t num = 0, den = 1;
};

/// Continued-fraction expansion terms of q/Q and the convergent sequence.
std::vector<std::uint64_t> continued_fraction_terms(std::uint64_t q, std::uint64_t Q);
std::vector<Fraction> continued_fraction_convergents(std::uint64_t q, std::uint64_t Q);
/// The unique convergent with denominator < bound within 1/(2Q) of q/Q,
/// when it exists.
std::optional<Fraction> best_order_convergent(std::uint64_t q, std::uint64_t Q,
                                              std::uint64_t bound);

// -- Shor ----------------------------------------------------------------

/// prob(q) for the order-finding measurement: sum_j of the geometric-series
/// weights with B_j = 1 + floor((Q-1-j)/r).
double shor_prob_q(std::uint64_t q, std::uint64_t r, std::uint64_t Q);

enum class ShorBackend { StateVector, Analytic };

struct ShorContext {
    std::uint64_t N = 0;
    std::uint64_t a = 0;
    int K = 0;           // source qubits; Q = 2^K in (N^2, 2 N^2)
    std::uint64_t Q = 0;

    static ShorContext make(std::uint64_t N, std::uint64_t a);
};

struct ShorOrderResult {
    std::uint64_t order = 0;
    std::vector<std::uint64_t> q_draws;
    int rounds = 0;
};

/// Order finding. The state-vector backend simulates the full circuit
/// (requires Q * 2^ceil(log2 N) within the amplitude cap); the analytic
/// backend computes r classically and samples q exactly from shor_prob_q,
/// then both run the same continued-fraction postprocessing.
ShorOrderResult shor_order(const ShorContext& ctx, ShorBackend backend, Rng& rng,
                           int max_rounds = 64);

/// One exact draw from prob(q) (used by the analytic backend; exposed for
/// histogram tests).
std::uint64_t shor_sample_q(std::uint64_t r, std::uint64_t Q, Rng& rng);

enum class FactorFailure { None, OrderOdd, SqrtIsMinusOne, BudgetExhausted };

struct FactorAttempt {
    std::uint64_t a = 0;
    std::uint64_t order = 0;
    FactorFailure failure = FactorFailure::None;
    std::uint64_t f1 = 0, f2 = 0;  // nontrivial pair when failure == None
};

struct FactorResult {
    bool success = false;
    std::uint64_t f1 = 0, f2 = 0;
    std::vector<FactorAttempt> attempts;
};

/// Case analysis for a fixed base a (criterion fixtures use this).
FactorAttempt factor_with_base(std::uint64_t N, std::uint64_t a, ShorBackend backend, Rng& rng);

/// Random-base factoring loop with a retry budget. N must be odd, >= 3,
/// and not prime (prime powers are screened by integer k-th root probing
/// and split directly).
FactorResult factor(std::uint64_t N, Rng& rng, ShorBackend backend, int budget = 20);

// -- state-vector order-finding internals (exposed for tests) ------------

/// The post-QFT source-register distribution of the simulated circuit.
std::vector<double> shor_statevector_distribution(const ShorContext& ctx);

}  // namespace algo
}  // namespace qit
