#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qit/gates.hpp"
#include "qit/hardware.hpp"

using namespace qit;
using namespace qit::hw;
using std::numbers::pi;

namespace {

double mat_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("rabi propagator") {
    RabiField res{1.0, 0.3, 1.0};
    CHECK(res.resonant());
    CHECK(res.rabi_frequency() == doctest::Approx(0.3));

    // t = 0: identity.
    CHECK(mat_dist(rabi_propagator(res, 0.0), {1, 0, 0, 1}) < 1e-15);

    // Resonant pi pulse flips with certainty.
    CHECK(spin_flip_prob(res, pi / res.rabi_frequency()) == doctest::Approx(1.0));
    // Half-integer multiples of the period keep flipping with certainty.
    CHECK(spin_flip_prob(res, 3 * pi / res.rabi_frequency()) == doctest::Approx(1.0));
    // Off the special times the flip is partial.
    CHECK(spin_flip_prob(res, 0.4 * pi / res.rabi_frequency()) < 1.0);

    // Detuning delta = omega1: maximum flip probability is 1/2.
    RabiField det{1.0 + 0.3, 0.3, 1.0};
    double best = 0;
    for (double t = 0; t < 100; t += 0.01) best = std::max(best, spin_flip_prob(det, t));
    CHECK(best == doctest::Approx(0.5).epsilon(1e-3));

    // Unitarity across random parameters.
    Rng rng(RngSeed{5});
    for (int rep = 0; rep < 50; ++rep) {
        RabiField f{rng.next_double() * 3, rng.next_double(), rng.next_double() * 3};
        const auto u = rabi_propagator(f, rng.next_double() * 20);
        CHECK(is_unitary(u, 2, 1e-12));
    }
}

TEST_CASE("ising levels and the addressable CNOT line") {
    // J = 0: pure Zeeman ladder with only two distinct transition lines.
    IsingPair free{-3.0, -2.0, 0.0};
    const auto f0 = ising_transition_frequencies(free);
    CHECK(f0[0] == doctest::Approx(2.0));
    CHECK(f0[1] == doctest::Approx(2.0));
    CHECK(f0[2] == doctest::Approx(3.0));
    CHECK(f0[3] == doctest::Approx(3.0));

    // Paper regime omega1 < omega2 < -J < 0, away from accidental
    // degeneracies like |omega2| + J = |omega1| - J.
    IsingPair p{-5.0, -2.5, 1.0};
    CHECK(ising_cnot_check(p));
    const auto f = ising_transition_frequencies(p);
    CHECK(f[1] == doctest::Approx(std::abs(p.omega2) + p.J));  // |11> <-> |10>
    CHECK(f[0] == doctest::Approx(std::abs(p.omega2) - p.J));
    CHECK(f[2] == doctest::Approx(std::abs(p.omega1) - p.J));
    CHECK(f[3] == doctest::Approx(std::abs(p.omega1) + p.J));

    // E00 + E11 = E01 + E10 + 2J.
    const auto e = ising_levels(p);
    CHECK(e[0] + e[3] == doctest::Approx(e[1] + e[2] + 2 * p.J));

    CHECK_FALSE(ising_cnot_check(free));
}

TEST_CASE("ising controlled phase") {
    CHECK(mat_dist(ising_cphase(0.0), gates::standard_gate("CPH", {0.0}).matrix) < 1e-12);
    CHECK(mat_dist(ising_cphase(pi), gates::standard_gate("CPH", {pi}).matrix) < 1e-12);
    CHECK(mat_dist(ising_cphase(1.3), gates::standard_gate("CPH", {1.3}).matrix) < 1e-12);

    // Exponent additivity: phi/2 twice equals phi.
    CHECK(mat_dist(gates::mat_mul(ising_cphase(pi / 2), ising_cphase(pi / 2), 4),
                   ising_cphase(pi)) < 1e-12);

    // phi = pi between Hadamards on the target gives CNOT.
    const auto h = gates::standard_gate("H").matrix;
    std::vector<cplx> h_on_target(16, cplx(0, 0));
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) h_on_target[(c * 2 + i) * 4 + (c * 2 + j)] = h[i * 2 + j];
    const auto sandwich =
        gates::mat_mul(h_on_target, gates::mat_mul(ising_cphase(pi), h_on_target, 4), 4);
    CHECK(mat_dist(sandwich, gates::standard_gate("CNOT").matrix) < 1e-12);
}

TEST_CASE("ion pulses act exactly as tabulated") {
    // V(pi, pi/2) on |0>: down to -|1> after the table's sine/cosine row.
    const auto v = ion_pulse_unitary({IonPulse::Kind::V, pi, pi / 2, 0}, 1);
    // dim = 3 * 2 = 6; |0>|g> is index 0, |1>|g> index 2.
    CHECK(std::abs(v[2 * 6 + 0] - cplx(-1, 0)) < 1e-12);

    // U1(2pi, 0) flips the sign of |0>|e> without population transfer.
    const auto u1 = ion_pulse_unitary({IonPulse::Kind::U1, 2 * pi, 0, 0}, 1);
    CHECK(std::abs(u1[1 * 6 + 1] - cplx(-1, 0)) < 1e-12);
    // |0>|g> is untouched.
    CHECK(std::abs(u1[0 * 6 + 0] - cplx(1, 0)) < 1e-12);

    for (auto kind : {IonPulse::Kind::V, IonPulse::Kind::U1, IonPulse::Kind::U2}) {
        const auto u = ion_pulse_unitary({kind, 1.1, 0.4, 0}, 2);
        CHECK(is_unitary(u, 18, 1e-12));
    }
}

TEST_CASE("pulse-composed controlled-phase and CNOT") {
    const auto cph = cz_cphase(0, 1);
    CHECK(cph.max_leakage < 1e-10);
    CHECK(gates::phase_aligned_distance(cph.unitary,
                                        gates::standard_gate("CPH", {pi}).matrix) < 1e-10);
    // |11> acquires the sign, |00> does not.
    CHECK(std::abs(cph.unitary[3 * 4 + 3] - cplx(-1, 0)) < 1e-12);
    CHECK(std::abs(cph.unitary[0] - cplx(1, 0)) < 1e-12);

    const auto cnot = cz_cnot(0, 1);
    CHECK(cnot.max_leakage < 1e-10);
    CHECK(gates::phase_aligned_distance(cnot.unitary, gates::standard_gate("CNOT").matrix) <
          1e-10);
    // Truth table: |10> -> |11>, |11> -> |10>, |0x> unchanged.
    CHECK(std::abs(cnot.unitary[3 * 4 + 2] - cplx(1, 0)) < 1e-10);
    CHECK(std::abs(cnot.unitary[2 * 4 + 3] - cplx(1, 0)) < 1e-10);
    CHECK(std::abs(cnot.unitary[0] - cplx(1, 0)) < 1e-10);
    CHECK(std::abs(cnot.unitary[1 * 4 + 1] - cplx(1, 0)) < 1e-10);

    // Also with the ions swapped inside a 3-ion register.
    const auto wide = cz_cnot(2, 0, 3);
    CHECK(gates::phase_aligned_distance(wide.unitary, gates::standard_gate("CNOT").matrix) <
          1e-10);
}

TEST_CASE("product-operator pulses match the published rows") {
    ProductOperatorState s1z;
    s1z.set("z.", 1.0);

    // [pi]_1^x sends S1z to -S1z.
    const auto flipped = nmr_pulse({NmrPulse::Kind::RotX, pi, 1}, s1z);
    CHECK(flipped.coefficient("z.") == doctest::Approx(-1.0));

    // [pi/2]_12^J sends S1y to -2 S1x S2z.
    ProductOperatorState s1y;
    s1y.set("y.", 1.0);
    const auto coupled = nmr_pulse({NmrPulse::Kind::Scalar, pi / 2, 0}, s1y);
    CHECK(coupled.coefficient("xz") == doctest::Approx(-1.0));
    CHECK(std::abs(coupled.coefficient("y.")) < 1e-12);

    // Gradient kills transverse terms: S1z + S2x -> S1z.
    ProductOperatorState mix;
    mix.set("z.", 1.0);
    mix.set(".x", 1.0);
    const auto after = nmr_pulse({NmrPulse::Kind::Gradient, 0, 0}, mix);
    CHECK(after.coefficient("z.") == doctest::Approx(1.0));
    CHECK(std::abs(after.coefficient(".x")) < 1e-15);
}

TEST_CASE("every unitary pulse equals direct 4x4 conjugation on every basis term") {
    const char letters[4] = {'.', 'x', 'y', 'z'};
    const std::vector<NmrPulse> pulses{
        {NmrPulse::Kind::RotX, 0.7, 1},  {NmrPulse::Kind::RotY, -1.2, 2},
        {NmrPulse::Kind::RotZ, 2.1, 1},  {NmrPulse::Kind::Scalar, 0.9, 0},
        {NmrPulse::Kind::RotX, pi, 2},
    };
    for (const auto& pulse : pulses) {
        const auto u = nmr_pulse_propagator(pulse);
        CHECK(is_unitary(u, 4, 1e-12));
        for (char a : letters)
            for (char b : letters) {
                ProductOperatorState basis;
                basis.set(std::string{a, b}, 1.0);
                const auto via_pulse = nmr_pulse(pulse, basis).matrix();
                // Direct conjugation of the term matrix.
                std::vector<cplx> udag(16);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) udag[j * 4 + i] = std::conj(u[i * 4 + j]);
                const auto direct =
                    gates::mat_mul(gates::mat_mul(u, basis.matrix(), 4), udag, 4);
                double worst = 0;
                for (int i = 0; i < 16; ++i)
                    worst = std::max(worst, std::abs(via_pulse[i] - direct[i]));
                CHECK(worst < 1e-12);
            }
    }
}

TEST_CASE("pseudo-pure preparation walks the published line sequence") {
    const auto states = nmr_prepare_pseudo_pure();
    REQUIRE(states.size() == 7);
    const double r2 = 1 / std::sqrt(2.0), r3 = std::sqrt(3.0) / 2;

    auto expect = [](std::initializer_list<std::pair<const char*, double>> terms) {
        ProductOperatorState s;
        for (const auto& [k, v] : terms) s.set(k, v);
        return s;
    };

    CHECK(states[0].approx_equal(expect({{"z.", 1}, {".z", 1}})));
    CHECK(states[1].approx_equal(expect({{"z.", 1}, {".z", 0.5}, {".y", -r3}})));
    CHECK(states[2].approx_equal(expect({{"z.", 1}, {".z", 0.5}})));
    CHECK(states[3].approx_equal(expect({{"z.", r2}, {"y.", -r2}, {".z", 0.5}})));
    CHECK(states[4].approx_equal(expect({{"z.", r2}, {"xz", r2}, {".z", 0.5}})));
    CHECK(states[5].approx_equal(
        expect({{"z.", 0.5}, {"x.", -0.5}, {"xz", 0.5}, {".z", 0.5}, {"zz", 0.5}})));
    CHECK(states[6].approx_equal(expect({{"z.", 0.5}, {".z", 0.5}, {"zz", 0.5}})));
}

TEST_CASE("bell pulse sequence reaches the published deviation matrix") {
    const auto states = nmr_bell_sequence();
    ProductOperatorState bell;
    bell.set("..", 0.25);
    bell.set("zz", 0.5);
    bell.set("xx", 0.5);
    bell.set("yy", -0.5);
    CHECK(states.back().approx_equal(bell, 1e-10));
}

TEST_CASE("cnot pulse sequence conjugates like the gate on all 16 basis ops") {
    const auto pulses = nmr_cnot_sequence();
    std::vector<cplx> u{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    for (const auto& p : pulses) u = gates::mat_mul(nmr_pulse_propagator(p), u, 4);
    const auto cnot = gates::standard_gate("CNOT").matrix;

    const char letters[4] = {'.', 'x', 'y', 'z'};
    for (char a : letters)
        for (char b : letters) {
            ProductOperatorState basis;
            basis.set(std::string{a, b}, 1.0);
            const auto m = basis.matrix();
            auto conj_by = [&](const std::vector<cplx>& v) {
                std::vector<cplx> vd(16);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) vd[j * 4 + i] = std::conj(v[i * 4 + j]);
                return gates::mat_mul(gates::mat_mul(v, m, 4), vd, 4);
            };
            const auto via_seq = conj_by(u);
            const auto via_gate = conj_by(cnot);
            double worst = 0;
            for (int i = 0; i < 16; ++i)
                worst = std::max(worst, std::abs(via_seq[i] - via_gate[i]));
            CHECK(worst < 1e-10);
        }
}

TEST_CASE("kane energy scales") {
    // A = 0 reduces the sector to pure Zeeman combinations.
    KaneParams zeeman = KaneParams::phosphorus_silicon(2.0, 10e9);
    zeeman.A = 0;
    const auto lv = kane_sector_levels(zeeman);
    const double geb = zeeman.gamma_e_bar * zeeman.B, gnb = zeeman.gamma_n_bar * zeeman.B;
    std::array<double, 4> expect{geb + zeeman.J / 4, geb + zeeman.J / 4,
                                 gnb - zeeman.J / 4 + zeeman.J / 2,
                                 gnb - zeeman.J / 4 - zeeman.J / 2};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 4; ++i) CHECK(lv[i] == doctest::Approx(expect[i]).epsilon(1e-12));

    // Splitting crossover: A/2 exceeds the nuclear Zeeman term below ~3.4 T.
    const auto p = KaneParams::phosphorus_silicon(2.0, 30e9);
    const double b_star = (p.A / 2) / p.gamma_n_bar;
    CHECK(b_star > 3.3);
    CHECK(b_star < 3.5);
    CHECK(p.A / 2 > p.gamma_n_bar * 2.0);   // still dominant at 2 T
    CHECK(p.A / 2 < p.gamma_n_bar * 3.5);   // crossed over by 3.5 T

    // nu_J at the published operating point: 75 kHz within 10%.
    const double nu_exact = kane_omega_j_exact(p);
    const double nu_pert = kane_omega_j_perturbative(p);
    CHECK(std::abs(nu_exact - 75e3) / 75e3 < 0.10);
    CHECK(std::abs(nu_pert - 75e3) / 75e3 < 0.10);

    // Exact vs perturbative agreement in the stated regime.
    KaneParams regime = p;
    regime.A = 0.02 * std::abs(regime.gamma_e_bar) * regime.B;
    regime.J = 0.3 * std::abs(regime.gamma_e_bar) * regime.B;
    CHECK(std::abs(kane_omega_j_exact(regime) - kane_omega_j_perturbative(regime)) /
              kane_omega_j_exact(regime) <
          0.05);

    // Exact sector levels contain the closed-form symmetric/antisymmetric
    // pair whose gap is omega_J.
    const auto levels = kane_sector_levels(p);
    const double d = (p.gamma_n_bar - p.gamma_e_bar) * p.B;
    const double common = 0.5 * (p.gamma_e_bar + p.gamma_n_bar) * p.B;
    const double e_s_minus = common + p.J / 4 - 0.5 * std::hypot(d, p.A);
    const double e_a_minus = common - p.J / 4 - 0.5 * std::hypot(d - p.J, p.A);
    bool found_s = false, found_a = false;
    for (double e : levels) {
        if (std::abs(e - e_s_minus) < 1e-3 * std::abs(e_s_minus)) found_s = true;
        if (std::abs(e - e_a_minus) < 1e-3 * std::abs(e_a_minus)) found_a = true;
    }
    CHECK(found_s);
    CHECK(found_a);

    // Regime lints.
    KaneParams bad = p;
    bad.J = 100e9;  // exceeds |gamma_e| B
    CHECK_THROWS(kane_omega_j_perturbative(bad));
    KaneParams bad2 = p;
    bad2.A = 30e9;
    CHECK_THROWS(kane_omega_j_perturbative(bad2));

    // The exchange coupling formula decays with distance.
    CHECK(kane_exchange(100.0) > kane_exchange(150.0));
    CHECK(kane_exchange(150.0) > 0);
}
