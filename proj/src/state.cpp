#include "qit/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qit {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

StateVector::StateVector(int local_dim, int num_sites, std::vector<cplx> amplitudes)
    : local_dim_(local_dim), num_sites_(num_sites), amps_(std::move(amplitudes)) {
    if (local_dim < 2) throw std::invalid_argument("StateVector: local_dim must be >= 2");
    if (num_sites < 1) throw std::invalid_argument("StateVector: num_sites must be >= 1");
    if (amps_.size() != pow_u64(local_dim, num_sites))
        throw std::invalid_argument("StateVector: amplitude count != d^n");
}

StateVector StateVector::zero(int local_dim, int num_sites) {
    return basis(local_dim, num_sites, 0);
}

StateVector StateVector::basis(int local_dim, int num_sites, std::uint64_t index) {
    std::vector<cplx> a(pow_u64(local_dim, num_sites), cplx(0, 0));
    if (index >= a.size()) throw std::invalid_argument("basis index out of range");
    a[index] = 1.0;
    return StateVector(local_dim, num_sites, std::move(a));
}

double StateVector::norm_sq() const {
    double s = 0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::normalize() {
    double n = std::sqrt(norm_sq());
    if (n == 0) throw std::runtime_error("cannot normalize the zero vector");
    for (cplx& a : amps_) a /= n;
}

int StateVector::digit(std::uint64_t index, int site) const {
    return static_cast<int>(index / pow_u64(local_dim_, site) % local_dim_);
}

bool StateVector::is_normalized(double tol) const {
    for (const cplx& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return std::abs(norm_sq() - 1.0) <= tol;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    cplx s(0, 0);
    for (std::uint64_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double overlap(const StateVector& a, const StateVector& b) {
    return std::abs(inner_product(a, b));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    if (a.local_dim() != b.local_dim())
        throw std::invalid_argument("tensor: local dimension mismatch");
    std::vector<cplx> out(a.dim() * b.dim());
    for (std::uint64_t i = 0; i < a.dim(); ++i)
        for (std::uint64_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return StateVector(a.local_dim(), a.num_sites() + b.num_sites(), std::move(out));
}

bool is_unitary(std::span<const cplx> u, std::size_t dim, double tol) {
    if (u.size() != dim * dim) return false;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s(0, 0);
            for (std::size_t k = 0; k < dim; ++k) s += std::conj(u[k * dim + i]) * u[k * dim + j];
            cplx expect = (i == j) ? cplx(1, 0) : cplx(0, 0);
            if (std::abs(s - expect) > tol) return false;
        }
    }
    return true;
}

StateVector apply_unitary(const StateVector& state, std::span<const cplx> u,
                          std::span<const int> targets) {
    const int d = state.local_dim();
    std::size_t gate_dim = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) gate_dim *= d;
    if (u.size() != gate_dim * gate_dim)
        throw std::invalid_argument("apply_unitary: matrix size != d^k x d^k");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= state.num_sites())
            throw std::invalid_argument("apply_unitary: target out of range");
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("apply_unitary: repeated target");
    }
    if (!is_unitary(u, gate_dim)) throw std::invalid_argument("apply_unitary: matrix not unitary");

    StateVector out = state;
    apply_unitary_parallel(d, out.amplitudes(), u, targets);
    return out;
}

std::vector<double> outcome_distribution(const StateVector& state,
                                         std::span<const int> targets) {
    const int d = state.local_dim();
    std::uint64_t k_dim = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) k_dim *= d;
    std::vector<std::uint64_t> site_stride(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= state.num_sites())
            throw std::invalid_argument("measure: target out of range");
        site_stride[i] = pow_u64(d, targets[i]);
    }
    std::vector<double> probs(k_dim, 0.0);
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        std::uint64_t o = 0, mult = 1;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            o += (idx / site_stride[i] % d) * mult;
            mult *= d;
        }
        probs[o] += std::norm(state[idx]);
    }
    return probs;
}

MeasurementRecord measure(const StateVector& state, std::span<const int> targets, Rng& rng) {
    const int d = state.local_dim();
    std::vector<double> probs = outcome_distribution(state, targets);

    double u = rng.next_double();
    std::uint64_t outcome = probs.size() - 1;
    double acc = 0;
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        acc += probs[o];
        if (u < acc) {
            outcome = o;
            break;
        }
    }

    std::vector<std::uint64_t> site_stride(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) site_stride[i] = pow_u64(d, targets[i]);

    MeasurementRecord rec{.outcome = {},
                          .outcome_index = outcome,
                          .probability = probs[outcome],
                          .post_state = state};
    std::uint64_t o = outcome;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        rec.outcome.push_back(static_cast<int>(o % d));
        o /= d;
    }

    double inv = 1.0 / std::sqrt(probs[outcome]);
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        std::uint64_t got = 0, mult = 1;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            got += (idx / site_stride[i] % d) * mult;
            mult *= d;
        }
        rec.post_state[idx] = (got == outcome) ? state[idx] * inv : cplx(0, 0);
    }
    return rec;
}

std::vector<std::uint64_t> sample_counts(const StateVector& state, std::span<const int> targets,
                                         std::uint64_t shots, Rng& rng) {
    std::vector<double> probs = outcome_distribution(state, targets);
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = rng.next_double();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t o = (it == cdf.end()) ? cdf.size() - 1 : std::distance(cdf.begin(), it);
        counts[o]++;
    }
    return counts;
}

}  // namespace qit
