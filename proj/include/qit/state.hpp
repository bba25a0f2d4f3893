#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qit/rng.hpp"

namespace qit {

using cplx = std::complex<double>;

constexpr double kAlgebraTol = 1e-10;   // algebraic identities
constexpr double kPsdTol = 1e-8;        // eigenvalue positivity

/// Normalized complex amplitude array over n qudits of local dimension d,
/// in computational-basis order. Site 0 is the least significant digit:
/// basis index x = sum_i x_i d^i, so |x> = |x_{n-1} ... x_1 x_0>.
class StateVector {
  public:
    StateVector(int local_dim, int num_sites, std::vector<cplx> amplitudes);

    /// |00...0>
    static StateVector zero(int local_dim, int num_sites);
    /// Basis state |index>
    static StateVector basis(int local_dim, int num_sites, std::uint64_t index);

    int local_dim() const { return local_dim_; }
    int num_sites() const { return num_sites_; }
    std::uint64_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    const cplx& operator[](std::uint64_t i) const { return amps_[i]; }
    cplx& operator[](std::uint64_t i) { return amps_[i]; }

    double norm_sq() const;
    /// Rescale so that norm_sq() == 1. Throws if the norm is zero.
    void normalize();

    /// Digit of `index` at `site` (value in [0, local_dim)).
    int digit(std::uint64_t index, int site) const;

    /// Check amplitude finiteness and unit norm within 1e-10.
    bool is_normalized(double tol = kAlgebraTol) const;

  private:
    int local_dim_;
    int num_sites_;
    std::vector<cplx> amps_;
};

/// Outcome of a projective measurement on a subset of sites.
struct MeasurementRecord {
    std::vector<int> outcome;    // one digit per measured site, same order as targets
    std::uint64_t outcome_index = 0;  // digits packed with targets[0] least significant
    double probability = 0.0;    // Born weight of the outcome in the pre-measurement state
    StateVector post_state;      // renormalized conditional state
};

/// <a|b>
cplx inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>| — states equal up to global phase have overlap 1.
double overlap(const StateVector& a, const StateVector& b);

/// Kronecker product; `a` occupies the high-significance sites.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Apply a d^k x d^k unitary to the listed sites. targets[i] receives
/// digit i of the gate's own index (least significant first), matching the
/// global site-0-LSB convention. Kernel backends below; this dispatches to
/// the parallel one.
StateVector apply_unitary(const StateVector& state, std::span<const cplx> u,
                          std::span<const int> targets);

/// Serial reference kernel, kept verbatim for differential testing.
void apply_unitary_serial(int local_dim, std::span<cplx> amps, std::span<const cplx> u,
                          std::span<const int> targets);
/// OpenMP kernel. Bitwise deterministic for fixed input regardless of
/// thread count: every output amplitude is written by exactly one thread.
void apply_unitary_parallel(int local_dim, std::span<cplx> amps, std::span<const cplx> u,
                            std::span<const int> targets);

/// Born-rule measurement of the listed sites. Collapses eagerly and returns
/// the renormalized conditional state.
MeasurementRecord measure(const StateVector& state, std::span<const int> targets, Rng& rng);

/// Marginal outcome distribution over the listed sites (length d^k, index
/// packed with targets[0] least significant).
std::vector<double> outcome_distribution(const StateVector& state, std::span<const int> targets);

/// Draw `shots` outcomes from the marginal distribution of the listed sites
/// without collapsing the state between shots. Returns counts per outcome.
std::vector<std::uint64_t> sample_counts(const StateVector& state, std::span<const int> targets,
                                         std::uint64_t shots, Rng& rng);

bool is_unitary(std::span<const cplx> u, std::size_t dim, double tol = kAlgebraTol);

}  // namespace qit
