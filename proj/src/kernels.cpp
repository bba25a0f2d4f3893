#include <cstdint>
#include <vector>

#include "qit/state.hpp"

// Gate-application kernels. Both walk the amplitude array in blocks that
// share the same non-target digits; blocks are disjoint, so the parallel
// kernel writes every amplitude from exactly one thread and its output is
// bitwise identical to the serial reference for any thread count.

namespace qit {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

struct KernelPlan {
    std::uint64_t gate_dim;                 // d^k
    std::uint64_t num_outer;                // d^(n-k)
    std::vector<std::uint64_t> offsets;     // local index -> amplitude offset
    std::vector<std::uint64_t> outer_stride;  // per non-target site
};

KernelPlan plan_kernel(int local_dim, std::size_t num_amps, std::span<const int> targets) {
    const std::uint64_t d = static_cast<std::uint64_t>(local_dim);
    int num_sites = 0;
    for (std::uint64_t v = 1; v < num_amps; v *= d) ++num_sites;

    KernelPlan plan;
    plan.gate_dim = pow_u64(d, static_cast<int>(targets.size()));
    plan.num_outer = num_amps / plan.gate_dim;

    std::vector<bool> is_target(num_sites, false);
    for (int t : targets) is_target[t] = true;
    for (int s = 0; s < num_sites; ++s)
        if (!is_target[s]) plan.outer_stride.push_back(pow_u64(d, s));

    plan.offsets.assign(plan.gate_dim, 0);
    for (std::uint64_t m = 0; m < plan.gate_dim; ++m) {
        std::uint64_t off = 0, rem = m;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            off += (rem % d) * pow_u64(d, targets[i]);
            rem /= d;
        }
        plan.offsets[m] = off;
    }
    return plan;
}

inline std::uint64_t outer_base(const KernelPlan& plan, std::uint64_t c, std::uint64_t d) {
    std::uint64_t base = 0, rem = c;
    for (std::uint64_t stride : plan.outer_stride) {
        base += (rem % d) * stride;
        rem /= d;
    }
    return base;
}

inline void apply_block(std::span<cplx> amps, std::span<const cplx> u, const KernelPlan& plan,
                        std::uint64_t base, std::vector<cplx>& scratch) {
    const std::uint64_t dim = plan.gate_dim;
    for (std::uint64_t m = 0; m < dim; ++m) scratch[m] = amps[base + plan.offsets[m]];
    for (std::uint64_t row = 0; row < dim; ++row) {
        cplx acc(0, 0);
        const cplx* urow = u.data() + row * dim;
        for (std::uint64_t col = 0; col < dim; ++col) acc += urow[col] * scratch[col];
        amps[base + plan.offsets[row]] = acc;
    }
}

}  // namespace

void apply_unitary_serial(int local_dim, std::span<cplx> amps, std::span<const cplx> u,
                          std::span<const int> targets) {
    const KernelPlan plan = plan_kernel(local_dim, amps.size(), targets);
    std::vector<cplx> scratch(plan.gate_dim);
    for (std::uint64_t c = 0; c < plan.num_outer; ++c)
        apply_block(amps, u, plan, outer_base(plan, c, local_dim), scratch);
}

void apply_unitary_parallel(int local_dim, std::span<cplx> amps, std::span<const cplx> u,
                            std::span<const int> targets) {
    const KernelPlan plan = plan_kernel(local_dim, amps.size(), targets);
    const std::int64_t n_outer = static_cast<std::int64_t>(plan.num_outer);

#pragma omp parallel
    {
        std::vector<cplx> scratch(plan.gate_dim);
#pragma omp for schedule(static)
        for (std::int64_t c = 0; c < n_outer; ++c)
            apply_block(amps, u, plan, outer_base(plan, static_cast<std::uint64_t>(c), local_dim),
                        scratch);
    }
}

}  // namespace qit
