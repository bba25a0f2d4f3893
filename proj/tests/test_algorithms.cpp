#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "qit/algorithms.hpp"

using namespace qit;
using namespace qit::algo;
using std::numbers::pi;

TEST_CASE("deutsch-jozsa: one query, certain verdict") {
    Rng rng(RngSeed{1});

    BooleanOracle const0(3, 1, [](std::uint64_t) { return 0ull; });
    auto r0 = deutsch_jozsa(const0, rng);
    CHECK(r0.verdict == DjVerdict::Constant);
    CHECK(r0.source_outcome == 0);
    CHECK(r0.queries == 1);

    BooleanOracle const1(3, 1, [](std::uint64_t) { return 1ull; });
    auto r1 = deutsch_jozsa(const1, rng);
    CHECK(r1.verdict == DjVerdict::Constant);
    CHECK(r1.queries == 1);

    BooleanOracle lsb(3, 1, [](std::uint64_t x) { return x & 1; });
    auto rb = deutsch_jozsa(lsb, rng);
    CHECK(rb.verdict == DjVerdict::Balanced);
    CHECK(rb.source_outcome != 0);
    CHECK(rb.queries == 1);
}

TEST_CASE("gf2 nullspace against exhaustive checks") {
    // rows {110, 011} over n=3 span a 2-dim row space; nullspace = {0, 111}.
    const auto basis = gf2_nullspace({0b110, 0b011}, 3);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == 0b111);

    const auto all = gf2_nullspace({}, 3);
    CHECK(all.size() == 3);  // full space

    // Exhaustive cross-check on random systems.
    Rng rng(RngSeed{3});
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_below(5));
        std::vector<std::uint64_t> rows;
        for (int i = 0; i < n - 1; ++i) rows.push_back(rng.next_below(1ull << n));
        const auto b = gf2_nullspace(rows, n);
        // Every basis vector annihilates every row; count solutions by brute
        // force and compare dimensions.
        for (auto v : b)
            for (auto row : rows) CHECK(std::popcount(static_cast<std::uint64_t>(row & v)) % 2 == 0);
        std::uint64_t brute = 0;
        for (std::uint64_t x = 0; x < (1ull << n); ++x) {
            bool ok = true;
            for (auto row : rows) ok &= std::popcount(static_cast<std::uint64_t>(row & x)) % 2 == 0;
            brute += ok;
        }
        CHECK(brute == (1ull << b.size()));
    }
}

TEST_CASE("simon recovers hidden periods") {
    Rng rng(RngSeed{10});

    // n=2, p=11: f maps {00,11}->0 and {01,10}->1.
    BooleanOracle f2(2, 2, [](std::uint64_t x) { return std::min(x, x ^ std::uint64_t{3}); });
    auto r2 = simon(f2, rng);
    CHECK(r2.period == 3);

    // n=3, p=101: table-driven oracle.
    std::map<std::uint64_t, std::uint64_t> table;
    for (std::uint64_t x = 0; x < 8; ++x) table[x] = std::min(x, x ^ std::uint64_t{5});
    BooleanOracle f3(3, 3, [table](std::uint64_t x) { return table.at(x); });
    auto r3 = simon(f3, rng);
    CHECK(r3.period == 5);
    for (auto y : r3.samples) CHECK(std::popcount(y & std::uint64_t{5}) % 2 == 0);
}

TEST_CASE("simon query count stays within the budgeted average") {
    double total = 0;
    int runs = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(RngSeed{seed});
        const int n = 4;
        BooleanOracle f(n, n, [](std::uint64_t x) { return std::min(x, x ^ std::uint64_t{11}); });
        auto r = simon(f, rng);
        CHECK(r.period == 11);
        total += static_cast<double>(r.queries);
        ++runs;
    }
    CHECK(total / runs <= 4.0 * 4);  // <= c n with c = 4
}

TEST_CASE("grover reduced kernel and spectrum") {
    // Original phase choice: K = G2 G1 is minus the textbook rotation
    // (G2 carries the opposite sign of the diffusion operator), so -K is
    // the rotation by 2 arcsin(1/sqrt N) and the eigenphases of K sit at
    // pi -+ 2 theta.
    const double N = 64;
    const auto k = grover_reduced_kernel(N, GroverParams::standard());
    const double theta = std::asin(1.0 / std::sqrt(N));
    const double c = 1 - 2 / N, s = 2 * std::sqrt(N - 1) / N;
    CHECK(-k[0].real() == doctest::Approx(c));
    CHECK(-k[1].real() == doctest::Approx(s));
    CHECK(-k[2].real() == doctest::Approx(-s));
    CHECK(-k[3].real() == doctest::Approx(c));
    CHECK(c == doctest::Approx(std::cos(2 * theta)));
    CHECK(s == doctest::Approx(std::sin(2 * theta)));

    const auto spec = grover_spectrum(N, GroverParams::standard());
    CHECK(std::abs(std::abs(spec.zeta1) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(spec.zeta2) - 1.0) < 1e-12);
    CHECK(std::abs(std::numbers::pi - std::abs(std::arg(spec.zeta2))) ==
          doctest::Approx(2 * theta));

    // Asymptotic gap for the phase family.
    const auto p = GroverParams::phase(pi / 2);
    const auto s1000 = grover_spectrum(1000, p);
    const double expect = 4.0 / std::sqrt(1000.0) * std::sqrt(p.delta).real();
    CHECK(std::abs(std::abs(s1000.delta_omega) - expect) / expect < 0.05);
}

TEST_CASE("grover full run equals the reduced-kernel prediction") {
    Rng rng(RngSeed{17});

    // N=4, one iteration: certainty.
    auto run4 = grover_search(2, 3, GroverParams::standard(), 1, rng);
    CHECK(run4.success_probability == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(grover_success_reduced(4, GroverParams::standard(), 1) ==
          doctest::Approx(1.0).epsilon(1e-9));

    for (int n : {4, 7, 10}) {
        for (double phi : {0.0, pi / 3, pi / 2}) {
            const auto params = phi == 0.0 ? GroverParams::standard()
                                           : GroverParams::phase(phi);
            const std::uint64_t x0 = rng.next_below(1ull << n);
            for (int m : {1, 5, 25, 100}) {
                const auto full = grover_search(n, x0, params, m, rng);
                const double reduced =
                    grover_success_reduced(std::pow(2.0, n), params, m);
                CHECK(std::abs(full.success_probability - reduced) < 1e-9);
            }
        }
    }
}

TEST_CASE("grover with beta != delta never clears the success threshold") {
    GroverParams p;
    p.beta = 1.0;
    p.delta = std::exp(cplx(0, pi / 2));
    double best = 0;
    for (int m = 1; m <= 200; ++m) best = std::max(best, grover_success_reduced(1024, p, m));
    CHECK(best < 0.5);
}

TEST_CASE("grover iteration-count formulas") {
    CHECK(grover_optimal_m(1000, pi / 2) == 35);
    CHECK(grover_exact_m(4) == 1);
    CHECK(grover_optimal_m(1024, 0.0) == 25);
    // The formula value sits at the simulated peak for the standard phase.
    const int m_formula = grover_optimal_m(1024, 0.0);
    double at = grover_success_reduced(1024, GroverParams::standard(), m_formula);
    CHECK(at > grover_success_reduced(1024, GroverParams::standard(), m_formula - 3));
    CHECK(at > 0.99);
}

TEST_CASE("modular arithmetic fixtures") {
    CHECK(mod_exp(7, 4, 15) == 1);
    CHECK(mod_exp(12083, 1794, 21823) == 4866);
    CHECK(gcd_u64(4866 - 1, 21823) == 139);
    CHECK(gcd_u64(4866 + 1, 21823) == 157);
    CHECK(mod_exp(14335, 897, 21823) == 21822);  // = -1 mod N
    CHECK(multiplicative_order(7, 15) == 4);
    CHECK(multiplicative_order(12083, 21823) == 3588);
    CHECK(multiplicative_order(71, 25397) == 522);
    CHECK(mod_inverse(5, 21528) == 12917);
    CHECK(prime_power_root(81).value() == 3);
    CHECK(prime_power_root(121).value() == 11);
    CHECK(prime_power_root(8).value() == 2);
    CHECK(!prime_power_root(15).has_value());
}

TEST_CASE("continued fractions and order convergents") {
    CHECK(continued_fraction_terms(64, 256) == std::vector<std::uint64_t>{0, 4});
    auto conv64 = continued_fraction_convergents(64, 256);
    CHECK(conv64.back().num == 1);
    CHECK(conv64.back().den == 4);

    CHECK(continued_fraction_terms(192, 256) == std::vector<std::uint64_t>{0, 1, 3});
    auto conv192 = continued_fraction_convergents(192, 256);
    CHECK(conv192.back().num == 3);
    CHECK(conv192.back().den == 4);

    const auto best = best_order_convergent(6170930, 1ull << 30, 25397);
    REQUIRE(best.has_value());
    CHECK(best->num == 1);
    CHECK(best->den == 174);
}

TEST_CASE("shor_prob_q: worked distribution values") {
    // N=15, a=7: r=4, Q=256 puts mass 1/4 on each of {0, 64, 128, 192}.
    for (std::uint64_t q : {0ull, 64ull, 128ull, 192ull})
        CHECK(shor_prob_q(q, 4, 256) == doctest::Approx(0.25));
    CHECK(shor_prob_q(1, 4, 256) < 1e-4);

    // Q=256, r=10: mass concentrates near multiples of 25.6.
    double near = 0, total = 0;
    for (std::uint64_t q = 0; q < 256; ++q) {
        const double p = shor_prob_q(q, 10, 256);
        total += p;
        for (int s = 0; s < 10; ++s)
            if (std::abs(static_cast<double>(q) - 25.6 * s) <= 1.0) {
                near += p;
                break;
            }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(near > 0.9);

    // The paper's appreciable-probability example point.
    const double p_example = shor_prob_q(6170930, 522, 1ull << 30);
    CHECK(p_example > 2e-3 / 1.5);
    CHECK(p_example < 2e-3 * 1.5);
}

TEST_CASE("shor_prob_q sums to one and the good set carries 0.405") {
    for (auto [Q, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {256, 4}, {256, 10}, {1024, 30}, {4096, 60}, {4096, 3000}}) {
        double total = 0, good = 0;
        for (std::uint64_t q = 0; q < Q; ++q) {
            const double p = shor_prob_q(q, r, Q);
            total += p;
            const std::uint64_t t = q * r % Q;
            const std::uint64_t dist = std::min(t, Q - t);
            if (2 * dist <= r) good += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(good >= 0.405);
    }
}

TEST_CASE("analytic q-sampler matches the distribution") {
    const std::uint64_t Q = 1024, r = 10;
    Rng rng(RngSeed{33});
    std::vector<double> counts(Q, 0.0);
    const int shots = 20000;
    for (int i = 0; i < shots; ++i) counts[shor_sample_q(r, Q, rng)] += 1.0;
    // Chi-square-ish check: aggregate over the 10 peak neighborhoods.
    double worst = 0;
    for (std::uint64_t q = 0; q < Q; ++q) {
        const double expect = shor_prob_q(q, r, Q) * shots;
        if (expect < 20) continue;
        const double sigma = std::sqrt(expect);
        worst = std::max(worst, std::abs(counts[q] - expect) / sigma);
    }
    CHECK(worst < 5.0);
}

TEST_CASE("state-vector order finding on the toy modulus") {
    Rng rng(RngSeed{7});
    const auto ctx = ShorContext::make(15, 7);
    CHECK(ctx.K == 8);
    CHECK(ctx.Q == 256);
    const auto res = shor_order(ctx, ShorBackend::StateVector, rng);
    CHECK(res.order == 4);

    // The simulated register distribution matches shor_prob_q.
    const auto dist = shor_statevector_distribution(ctx);
    for (std::uint64_t q = 0; q < 256; ++q)
        CHECK(std::abs(dist[q] - shor_prob_q(q, 4, 256)) < 1e-10);
}

TEST_CASE("state-vector histogram matches shor_prob_q within 4 sigma") {
    Rng rng(RngSeed{2});
    const auto ctx = ShorContext::make(15, 7);
    const auto dist = shor_statevector_distribution(ctx);
    const std::uint64_t shots = 10000;
    std::vector<std::uint64_t> counts(dist.size(), 0);
    std::vector<double> cdf(dist.size());
    double acc = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) cdf[i] = (acc += dist[i]);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        counts[std::distance(cdf.begin(), std::upper_bound(cdf.begin(), cdf.end(), u))]++;
    }
    for (std::uint64_t q = 0; q < dist.size(); ++q) {
        const double expect = shor_prob_q(q, 4, 256) * shots;
        const double sigma = std::sqrt(std::max(expect, 1.0));
        CHECK(std::abs(static_cast<double>(counts[q]) - expect) <= 4 * sigma + 1);
    }
}

TEST_CASE("analytic order finding reproduces the worked moduli") {
    Rng rng(RngSeed{4});
    const auto big = shor_order(ShorContext::make(21823, 12083), ShorBackend::Analytic, rng);
    CHECK(big.order == 3588);

    const auto bigger = shor_order(ShorContext::make(25397, 71), ShorBackend::Analytic, rng);
    CHECK(bigger.order == 522);
}

TEST_CASE("factoring pipeline") {
    Rng rng(RngSeed{12});
    const auto f15 = factor(15, rng, ShorBackend::StateVector);
    CHECK(f15.success);
    CHECK(f15.f1 == 3);
    CHECK(f15.f2 == 5);

    const auto forced = factor_with_base(21823, 14335, ShorBackend::Analytic, rng);
    CHECK(forced.failure == FactorFailure::SqrtIsMinusOne);
    CHECK(forced.order == 1794);
    CHECK(forced.f1 == 1);
    CHECK(forced.f2 == 21823);

    const auto big = factor(21823, rng, ShorBackend::Analytic);
    CHECK(big.success);
    CHECK(big.f1 == 139);
    CHECK(big.f2 == 157);
    CHECK(big.f1 * big.f2 == 21823);

    // Prime powers are screened before any quantum work.
    const auto pp = factor(343, rng, ShorBackend::Analytic);
    CHECK(pp.success);
    CHECK(pp.f1 == 7);

    CHECK_THROWS(factor(16, rng, ShorBackend::Analytic));  // even
}

TEST_CASE("factor outputs multiply back to N across random semiprimes") {
    Rng rng(RngSeed{21});
    const std::uint64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    for (int rep = 0; rep < 12; ++rep) {
        const std::uint64_t p = primes[rng.next_below(8)];
        std::uint64_t q = primes[rng.next_below(8)];
        if (p == q) continue;
        const auto res = factor(p * q, rng, ShorBackend::Analytic);
        CHECK(res.success);
        CHECK(res.f1 * res.f2 == p * q);
    }
}
