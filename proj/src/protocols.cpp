#include "qit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qit/algorithms.hpp"
#include "qit/gates.hpp"
#include "qit/qinfo.hpp"

namespace qit {
namespace protocols {

void ProtocolTranscript::record(Party party, std::string action, std::vector<int> cbits,
                                std::vector<int> outcomes) {
    events.push_back(TranscriptEvent{party, std::move(action), std::move(cbits),
                                     std::move(outcomes)});
}

int ProtocolTranscript::classical_bits_from(Party party) const {
    int n = 0;
    for (const auto& e : events)
        if (e.party == party) n += static_cast<int>(e.classical_bits_sent.size());
    return n;
}

// ---------------------------------------------------------------------
// Teleportation

TeleportResult teleport(const StateVector& psi, Rng& rng) {
    if (psi.local_dim() != 2 || psi.num_sites() != 1)
        throw std::invalid_argument("teleport expects a single qubit");
    if (!psi.is_normalized()) throw std::invalid_argument("teleport: state not normalized");

    ProtocolTranscript transcript;
    transcript.ebits_consumed = 1;
    transcript.record(Party::Alice, "share |Phi+> with Bob");

    // Sites: 2 = Alice's data qubit, 1 = Alice's EPR half, 0 = Bob's half.
    StateVector s = tensor(psi, qinfo::bell(qinfo::BellKind::PhiPlus));

    const auto cnot = gates::standard_gate("CNOT");
    const auto h = gates::standard_gate("H");
    s = apply_unitary(s, cnot.matrix, std::vector<int>{1, 2});
    s = apply_unitary(s, h.matrix, std::vector<int>{2});

    const std::vector<int> alice_sites{2, 1};
    MeasurementRecord rec = measure(s, alice_sites, rng);
    const int a = rec.outcome[0];  // first qubit
    const int b = rec.outcome[1];  // second qubit
    transcript.record(Party::Alice, "Bell measurement consumes the data qubit", {}, {a, b});
    transcript.record(Party::Alice, "send outcome over the classical channel", {a, b});

    // Correction table keyed on the two classical bits: 1, X, Z, Y.
    static const char* kCorrection[4] = {"I", "X", "Z", "Y"};
    const int branch = a * 2 + b;
    StateVector after = rec.post_state;
    after = apply_unitary(after, gates::standard_gate(kCorrection[branch]).matrix,
                          std::vector<int>{0});
    transcript.record(Party::Bob, std::string("apply ") + kCorrection[branch]);

    // Pull out Bob's qubit (the other two sites are in a product state
    // after the measurement).
    std::vector<cplx> bob(2, cplx(0, 0));
    const std::uint64_t base = (static_cast<std::uint64_t>(a) << 2) |
                               (static_cast<std::uint64_t>(b) << 1);
    bob[0] = after[base];
    bob[1] = after[base | 1];
    StateVector bob_state(2, 1, std::move(bob));
    bob_state.normalize();
    return TeleportResult{std::move(bob_state), branch, std::move(transcript)};
}

// ---------------------------------------------------------------------
// Dense coding

StateVector dense_encode(int message) {
    if (message < 0 || message > 3) throw std::invalid_argument("dense_encode: 2-bit message");
    static const char* kCoding[4] = {"I", "Z", "X", "Y"};
    StateVector s = qinfo::bell(qinfo::BellKind::PhiPlus);  // Alice = site 1, Bob = site 0
    return apply_unitary(s, gates::standard_gate(kCoding[message]).matrix, std::vector<int>{1});
}

DenseDecodeResult dense_decode(const StateVector& two_qubits, Rng& rng) {
    if (two_qubits.num_sites() != 2 || two_qubits.local_dim() != 2)
        throw std::invalid_argument("dense_decode expects two qubits");
    ProtocolTranscript transcript;
    transcript.ebits_consumed = 1;

    const auto cnot = gates::standard_gate("CNOT");
    const auto h = gates::standard_gate("H");
    StateVector s = apply_unitary(two_qubits, cnot.matrix, std::vector<int>{0, 1});
    MeasurementRecord first = measure(s, std::vector<int>{0}, rng);
    transcript.record(Party::Bob, "CNOT then measure the second qubit", {}, first.outcome);

    StateVector t = apply_unitary(first.post_state, h.matrix, std::vector<int>{1});
    MeasurementRecord second = measure(t, std::vector<int>{1}, rng);
    transcript.record(Party::Bob, "Hadamard then measure the first qubit", {}, second.outcome);

    const int message = first.outcome[0] * 2 + second.outcome[0];
    return DenseDecodeResult{message, std::move(transcript)};
}

// ---------------------------------------------------------------------
// QKD

namespace {

StateVector photon_state(int bit, Basis basis) {
    // H, V, D, A polarizations as qubit states; D = (H+V)/sqrt2.
    const double s = 1.0 / std::sqrt(2.0);
    if (basis == Basis::Rectilinear)
        return StateVector::basis(2, 1, bit);
    return StateVector(2, 1, bit == 0 ? std::vector<cplx>{s, s} : std::vector<cplx>{s, -s});
}

int measure_photon(StateVector& photon, Basis basis, Rng& rng) {
    if (basis == Basis::Diagonal) {
        const auto h = gates::standard_gate("H");
        photon = apply_unitary(photon, h.matrix, std::vector<int>{0});
    }
    MeasurementRecord rec = measure(photon, std::vector<int>{0}, rng);
    photon = rec.post_state;
    if (basis == Basis::Diagonal) {
        const auto h = gates::standard_gate("H");
        photon = apply_unitary(photon, h.matrix, std::vector<int>{0});
    }
    return rec.outcome[0];
}

Basis random_basis(Rng& rng) { return rng.next_bool() ? Basis::Diagonal : Basis::Rectilinear; }

}  // namespace

QKDSession bb84_session(int n, bool eve, Rng& rng, double loss_probability) {
    if (n < 1) throw std::invalid_argument("bb84_session: n >= 1");
    QKDSession session;
    session.n_photons = n;
    session.eve_enabled = eve;
    session.alice_bits.reserve(n);

    for (int i = 0; i < n; ++i) {
        const int bit = rng.next_bool() ? 1 : 0;
        const Basis a_basis = random_basis(rng);
        session.alice_bits.push_back(bit);
        session.alice_bases.push_back(a_basis);

        StateVector photon = photon_state(bit, a_basis);
        if (eve) {
            const Basis e_basis = random_basis(rng);
            measure_photon(photon, e_basis, rng);  // intercept-resend
        }
        const Basis b_basis = random_basis(rng);
        session.bob_bases.push_back(b_basis);

        if (loss_probability > 0 && rng.next_double() < loss_probability) {
            session.bob_outcomes.push_back(-1);  // no detection
            continue;
        }
        session.bob_outcomes.push_back(measure_photon(photon, b_basis, rng));
    }

    int disagreements = 0;
    for (int i = 0; i < n; ++i) {
        if (session.bob_outcomes[i] < 0) continue;
        if (session.alice_bases[i] != session.bob_bases[i]) continue;
        session.sifted_alice.push_back(session.alice_bits[i]);
        session.sifted_bob.push_back(session.bob_outcomes[i]);
        if (session.alice_bits[i] != session.bob_outcomes[i]) ++disagreements;
    }
    session.qber = session.sifted_alice.empty()
                       ? 0.0
                       : static_cast<double>(disagreements) / session.sifted_alice.size();
    session.final_key_alice = session.sifted_alice;
    session.final_key_bob = session.sifted_bob;
    return session;
}

QKDSession bbm92_session(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("bbm92_session: n >= 1");
    QKDSession session;
    session.n_photons = n;

    for (int i = 0; i < n; ++i) {
        StateVector pair = qinfo::bell(qinfo::BellKind::PsiMinus);  // Alice site 1, Bob site 0
        const Basis a_basis = random_basis(rng);
        const Basis b_basis = random_basis(rng);
        session.alice_bases.push_back(a_basis);
        session.bob_bases.push_back(b_basis);

        const auto h = gates::standard_gate("H");
        if (a_basis == Basis::Diagonal) pair = apply_unitary(pair, h.matrix, std::vector<int>{1});
        if (b_basis == Basis::Diagonal) pair = apply_unitary(pair, h.matrix, std::vector<int>{0});
        MeasurementRecord alice = measure(pair, std::vector<int>{1}, rng);
        MeasurementRecord bob = measure(alice.post_state, std::vector<int>{0}, rng);

        session.alice_bits.push_back(alice.outcome[0]);
        session.bob_outcomes.push_back(bob.outcome[0]);
        if (a_basis != b_basis) continue;
        // Same-basis singlet outcomes anticorrelate; Bob reverses his.
        session.sifted_alice.push_back(alice.outcome[0]);
        session.sifted_bob.push_back(1 - bob.outcome[0]);
    }

    int disagreements = 0;
    for (std::size_t i = 0; i < session.sifted_alice.size(); ++i)
        if (session.sifted_alice[i] != session.sifted_bob[i]) ++disagreements;
    session.qber = session.sifted_alice.empty()
                       ? 0.0
                       : static_cast<double>(disagreements) / session.sifted_alice.size();
    session.final_key_alice = session.sifted_alice;
    session.final_key_bob = session.sifted_bob;
    return session;
}

bool QKDSession::check_sample_detects(int sample_size, Rng& rng) {
    const int avail = static_cast<int>(sifted_alice.size());
    const int take = std::min(sample_size, avail);
    std::vector<int> order(avail);
    for (int i = 0; i < avail; ++i) order[i] = i;
    for (int i = avail - 1; i > 0; --i)
        std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);

    bool mismatch = false;
    std::vector<bool> used(avail, false);
    for (int i = 0; i < take; ++i) {
        const int pos = order[i];
        used[pos] = true;
        if (sifted_alice[pos] != sifted_bob[pos]) mismatch = true;
    }
    final_key_alice.clear();
    final_key_bob.clear();
    for (int i = 0; i < avail; ++i) {
        if (used[i]) continue;
        final_key_alice.push_back(sifted_alice[i]);
        final_key_bob.push_back(sifted_bob[i]);
    }
    return mismatch;
}

double QKDSession::detection_probability(int sample_size) {
    return 1.0 - std::pow(0.75, sample_size);
}

// ---------------------------------------------------------------------
// One-time pad

std::vector<int> vernam_encrypt(const std::vector<int>& plain, const std::vector<int>& key,
                                int base) {
    if (base < 2) throw std::invalid_argument("vernam: base >= 2");
    if (key.size() < plain.size()) throw std::invalid_argument("vernam: key shorter than text");
    std::vector<int> cipher(plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (plain[i] < 0 || plain[i] >= base || key[i] < 0 || key[i] >= base)
            throw std::invalid_argument("vernam: symbol outside Z_base");
        cipher[i] = (plain[i] + key[i]) % base;
    }
    return cipher;
}

std::vector<int> vernam_decrypt(const std::vector<int>& cipher, const std::vector<int>& key,
                                int base) {
    if (base < 2) throw std::invalid_argument("vernam: base >= 2");
    if (key.size() < cipher.size()) throw std::invalid_argument("vernam: key shorter than text");
    std::vector<int> plain(cipher.size());
    for (std::size_t i = 0; i < cipher.size(); ++i)
        plain[i] = (cipher[i] - key[i] % base + base) % base;
    return plain;
}

// ---------------------------------------------------------------------
// Toy RSA

namespace {
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace

RsaKeyPair rsa_keygen(std::uint64_t p1, std::uint64_t p2, std::uint64_t d) {
    if (!is_prime(p1) || !is_prime(p2) || p1 == p2)
        throw std::invalid_argument("rsa_keygen: need two distinct primes");
    RsaKeyPair key;
    key.N = p1 * p2;
    key.phi = (p1 - 1) * (p2 - 1);
    if (d < 2 || algo::gcd_u64(d, key.phi) != 1)
        throw std::invalid_argument("rsa_keygen: d must be coprime to phi(N)");
    key.d = d;
    key.c = algo::mod_inverse(d, key.phi);
    return key;
}

std::uint64_t rsa_encrypt(std::uint64_t block, const RsaKeyPair& key) {
    if (block >= key.N) throw std::invalid_argument("rsa_encrypt: block must be < N");
    return algo::mod_exp(block, key.c, key.N);
}

std::uint64_t rsa_decrypt(std::uint64_t cipher, const RsaKeyPair& key) {
    return algo::mod_exp(cipher, key.d, key.N);
}

RsaBreakResult rsa_break(std::uint64_t N, std::uint64_t public_c, std::uint64_t challenge_cipher,
                         Rng& rng) {
    const auto factored = algo::factor(N, rng, algo::ShorBackend::Analytic);
    if (!factored.success) throw std::runtime_error("rsa_break: factoring budget exhausted");
    RsaBreakResult out;
    out.p1 = factored.f1;
    out.p2 = factored.f2;
    out.phi = (out.p1 - 1) * (out.p2 - 1);
    out.recovered_d = algo::mod_inverse(public_c, out.phi);
    out.decrypted_block = algo::mod_exp(challenge_cipher, out.recovered_d, N);
    return out;
}

}  // namespace protocols
}  // namespace qit
