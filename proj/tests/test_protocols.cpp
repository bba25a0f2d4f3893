#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qit/algorithms.hpp"
#include "qit/protocols.hpp"

using namespace qit;
using namespace qit::protocols;
using std::numbers::pi;

TEST_CASE("teleportation reproduces the state in every branch") {
    std::set<int> branches;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(RngSeed{seed});
        const double theta = 0.7, phi = 2.1;
        StateVector psi(2, 1,
                        {std::cos(theta / 2), std::exp(cplx(0, phi)) * std::sin(theta / 2)});
        const auto res = teleport(psi, rng);
        CHECK(overlap(psi, res.bob_state) == doctest::Approx(1.0).epsilon(1e-10));
        branches.insert(res.branch);

        // Resource audit: exactly 2 classical bits and 1 shared pair.
        CHECK(res.transcript.classical_bits_from(Party::Alice) == 2);
        CHECK(res.transcript.ebits_consumed == 1);
    }
    CHECK(branches.size() == 4);  // all four correction branches exercised

    Rng rng(RngSeed{5});
    auto zero = teleport(StateVector::basis(2, 1, 0), rng);
    CHECK(overlap(StateVector::basis(2, 1, 0), zero.bob_state) == doctest::Approx(1.0));

    const double s = 1 / std::sqrt(2.0);
    StateVector plus(2, 1, {s, s});
    auto p = teleport(plus, rng);
    CHECK(overlap(plus, p.bob_state) == doctest::Approx(1.0));
}

TEST_CASE("teleportation transcript orders messages before consumption") {
    Rng rng(RngSeed{8});
    const auto res = teleport(StateVector::basis(2, 1, 0), rng);
    int send_index = -1, bob_index = -1;
    for (std::size_t i = 0; i < res.transcript.events.size(); ++i) {
        const auto& e = res.transcript.events[i];
        if (!e.classical_bits_sent.empty()) send_index = static_cast<int>(i);
        if (e.party == Party::Bob) bob_index = static_cast<int>(i);
    }
    REQUIRE(send_index >= 0);
    REQUIRE(bob_index >= 0);
    CHECK(send_index < bob_index);
}

TEST_CASE("dense coding round-trips all four messages deterministically") {
    for (int message = 0; message < 4; ++message) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            Rng rng(RngSeed{seed});
            const auto decoded = dense_decode(dense_encode(message), rng);
            CHECK(decoded.message == message);
            // 2 classical bits received per transmitted qubit.
            int outcomes = 0;
            for (const auto& e : decoded.transcript.events)
                outcomes += static_cast<int>(e.measurement_outcomes.size());
            CHECK(outcomes == 2);
        }
    }
    // Encoding table: message 2 flips Alice's half, giving (|10> + |01>)/sqrt2.
    const auto encoded = dense_encode(2);
    CHECK(std::abs(encoded[1] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(encoded[2] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("bb84 without an eavesdropper") {
    Rng rng(RngSeed{1});
    auto session = bb84_session(100000, false, rng);
    CHECK(session.sifted_alice == session.sifted_bob);
    CHECK(session.qber == doctest::Approx(0.0));
    // Kept fraction converges to 1/2 within 4 sigma.
    const double expect = 100000 / 2.0;
    const double sigma = std::sqrt(100000 * 0.25);
    CHECK(std::abs(static_cast<double>(session.sifted_alice.size()) - expect) <= 4 * sigma);
}

TEST_CASE("bb84 with an intercept-resend eavesdropper") {
    Rng rng(RngSeed{1});
    auto session = bb84_session(100000, true, rng);
    CHECK(session.qber == doctest::Approx(0.25).epsilon(0.04));
    CHECK(std::abs(session.qber - 0.25) < 0.01);

    // A 72-bit public comparison catches her except with chance (3/4)^72.
    CHECK(QKDSession::detection_probability(72) >= 1.0 - std::pow(0.75, 72));
    auto caught = session.check_sample_detects(72, rng);
    CHECK(caught);
    CHECK(session.final_key_alice.size() == session.sifted_alice.size() - 72);
}

TEST_CASE("bb84 detection statistics at small sample sizes") {
    // Empirical detection rate for 4-bit check samples vs 1 - (3/4)^4.
    int detected = 0;
    const int sessions = 800;
    for (int i = 0; i < sessions; ++i) {
        Rng rng(RngSeed{static_cast<std::uint64_t>(i) + 1000});
        auto s = bb84_session(64, true, rng);
        if (s.sifted_alice.size() < 4) continue;
        detected += s.check_sample_detects(4, rng);
    }
    const double expect = (1 - std::pow(0.75, 4)) * sessions;
    const double sigma = std::sqrt(sessions * 0.684 * 0.316);
    CHECK(std::abs(detected - expect) <= 4.5 * sigma);
}

TEST_CASE("bb84 with detection losses still sifts correctly") {
    Rng rng(RngSeed{3});
    auto session = bb84_session(20000, false, rng, 0.2);
    CHECK(session.sifted_alice == session.sifted_bob);
    // Kept fraction about (1 - loss)/2.
    CHECK(static_cast<double>(session.sifted_alice.size()) / 20000 ==
          doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("bbm92 produces identical keys after Bob's reversal") {
    Rng rng(RngSeed{2});
    auto session = bbm92_session(10000, rng);
    CHECK(session.sifted_alice == session.sifted_bob);
    CHECK(session.qber == doctest::Approx(0.0));
    CHECK(static_cast<double>(session.sifted_alice.size()) / 10000 ==
          doctest::Approx(0.5).epsilon(0.1));

    // Same-basis raw outcomes anticorrelate; different-basis outcomes are
    // uncorrelated within 4 sigma.
    int same_agree = 0, same_total = 0;
    double diff_corr = 0;
    int diff_total = 0;
    for (int i = 0; i < session.n_photons; ++i) {
        const int a = session.alice_bits[i], b = session.bob_outcomes[i];
        if (session.alice_bases[i] == session.bob_bases[i]) {
            same_total++;
            same_agree += a == b;
        } else {
            diff_total++;
            diff_corr += (2 * a - 1) * (2 * b - 1);
        }
    }
    CHECK(same_agree == 0);  // strict anticorrelation
    CHECK(std::abs(diff_corr / diff_total) <= 4.0 / std::sqrt(static_cast<double>(diff_total)));
    CHECK(same_total > 0);
}

TEST_CASE("vernam one-time pad") {
    CHECK(vernam_encrypt({1, 0, 1, 0}, {0, 1, 1, 0}, 2) == std::vector<int>{1, 1, 0, 0});
    CHECK(vernam_decrypt({1, 1, 0, 0}, {0, 1, 1, 0}, 2) == std::vector<int>{1, 0, 1, 0});

    // Zero key: identity.
    CHECK(vernam_encrypt({5, 3, 1}, {0, 0, 0}, 10) == std::vector<int>{5, 3, 1});

    // Round trip on random base-27 text.
    Rng rng(RngSeed{4});
    std::vector<int> plain(200), key(220);
    for (auto& x : plain) x = static_cast<int>(rng.next_below(27));
    for (auto& x : key) x = static_cast<int>(rng.next_below(27));
    CHECK(vernam_decrypt(vernam_encrypt(plain, key, 27), key, 27) == plain);

    // Key reuse leaks: c - c' = p - p' independent of the key.
    std::vector<int> plain2(200);
    for (auto& x : plain2) x = static_cast<int>(rng.next_below(27));
    const auto c1 = vernam_encrypt(plain, key, 27);
    const auto c2 = vernam_encrypt(plain2, key, 27);
    for (int i = 0; i < 200; ++i)
        CHECK((c1[i] - c2[i] + 27) % 27 == (plain[i] - plain2[i] + 27) % 27);

    CHECK_THROWS(vernam_encrypt({1, 0, 1}, {0, 1}, 2));  // short key
    CHECK_THROWS(vernam_encrypt({2}, {0}, 2));           // symbol out of range
}

TEST_CASE("toy rsa round trip on the worked modulus") {
    const auto key = rsa_keygen(139, 157, 5);
    CHECK(key.N == 21823);
    CHECK(key.phi == 21528);
    CHECK(key.c * key.d % key.phi == 1);

    Rng rng(RngSeed{5});
    for (int rep = 0; rep < 50; ++rep) {
        const std::uint64_t block = rng.next_below(21823);
        CHECK(rsa_decrypt(rsa_encrypt(block, key), key) == block);
    }

    // Degenerate exponent d = 1 is rejected by the lint, while the
    // arithmetic it would produce is the identity map.
    CHECK_THROWS(rsa_keygen(139, 157, 1));
    CHECK(algo::mod_exp(1234, 1, 21823) == 1234);

    CHECK_THROWS(rsa_keygen(140, 157, 5));  // not prime
    CHECK_THROWS(rsa_keygen(139, 139, 5));  // not distinct
    CHECK_THROWS(rsa_keygen(139, 157, 6));  // gcd(d, phi) != 1
    CHECK_THROWS(rsa_encrypt(30000, key));
}

TEST_CASE("rsa break through order finding") {
    const auto key = rsa_keygen(139, 157, 25);
    const std::uint64_t secret = 4866;
    const auto cipher = rsa_encrypt(secret, key);
    Rng rng(RngSeed{6});
    const auto broken = rsa_break(key.N, key.c, cipher, rng);
    CHECK(broken.p1 == 139);
    CHECK(broken.p2 == 157);
    CHECK(broken.recovered_d == key.d);
    CHECK(broken.decrypted_block == secret);
}
