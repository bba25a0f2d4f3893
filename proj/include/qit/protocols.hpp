#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qit/state.hpp"

namespace qit {
namespace protocols {

enum class Party { Alice, Bob, Eve };

/// One protocol action: optional classical bits sent and measurement
/// outcomes observed. Classical messages are appended before any event
/// that consumes them; parties read each other only through these entries.
struct TranscriptEvent {
    Party party;
    std::string action;
    std::vector<int> classical_bits_sent;
    std::vector<int> measurement_outcomes;
};

struct ProtocolTranscript {
    std::vector<TranscriptEvent> events;

    void record(Party party, std::string action, std::vector<int> cbits = {},
                std::vector<int> outcomes = {});
    int classical_bits_from(Party party) const;
    int ebits_consumed = 0;
};

// -- teleportation -------------------------------------------------------

struct TeleportResult {
    StateVector bob_state;      // equals the input up to global phase
    int branch;                 // Alice's two measured bits, packed
    ProtocolTranscript transcript;
};

/// Teleport a 1-qubit state over a shared |Phi+> pair with 2 classical
/// bits; Alice's original is consumed by her Bell measurement.
TeleportResult teleport(const StateVector& psi, Rng& rng);

// -- dense coding ----------------------------------------------------------

/// Encode a 2-bit message on Alice's half of |Phi+>: gates 1, Z, X, Y for
/// messages 0..3.
StateVector dense_encode(int message);
/// Bob's CNOT + Hadamard decoding circuit; deterministic.
struct DenseDecodeResult {
    int message;
    ProtocolTranscript transcript;
};
DenseDecodeResult dense_decode(const StateVector& two_qubits, Rng& rng);

// -- QKD --------------------------------------------------------------------

/// Polarization bases; bit 0 encodes {0deg, 45deg}, bit 1 the rest.
enum class Basis { Rectilinear, Diagonal };  // + and x

struct QKDSession {
    int n_photons = 0;
    bool eve_enabled = false;
    std::vector<int> alice_bits;
    std::vector<Basis> alice_bases;
    std::vector<Basis> bob_bases;
    std::vector<int> bob_outcomes;
    std::vector<int> sifted_alice;
    std::vector<int> sifted_bob;
    double qber = 0.0;  // disagreement fraction over sifted positions

    /// Publicly compare `sample_size` random sifted positions; true when a
    /// discrepancy shows up. Compared positions are discarded from the key.
    bool check_sample_detects(int sample_size, Rng& rng);
    /// 1 - (3/4)^N, the chance an intercept-resend Eve survives an N-bit
    /// comparison.
    static double detection_probability(int sample_size);

    std::vector<int> final_key_alice;  // sifted minus check sample
    std::vector<int> final_key_bob;
};

/// Four-state prepare-and-measure session, with an optional
/// intercept-resend eavesdropper measuring in a random basis per photon.
/// `loss_probability` models detection failures (those photons are
/// discarded in sifting).
QKDSession bb84_session(int n, bool eve, Rng& rng, double loss_probability = 0.0);

/// Singlet-based session: both parties measure along x or z at random,
/// keep matching bases, and Bob flips his outcomes.
QKDSession bbm92_session(int n, Rng& rng);

// -- classical ciphers -------------------------------------------------------

/// One-time pad over Z_B: c_j = p_j + k_j mod B.
std::vector<int> vernam_encrypt(const std::vector<int>& plain, const std::vector<int>& key,
                                int base);
std::vector<int> vernam_decrypt(const std::vector<int>& cipher, const std::vector<int>& key,
                                int base);

struct RsaKeyPair {
    std::uint64_t N = 0;
    std::uint64_t c = 0;    // public exponent
    std::uint64_t d = 0;    // private exponent
    std::uint64_t phi = 0;  // (p1-1)(p2-1)
};

/// Build a key pair from two distinct primes and a private exponent d
/// coprime to phi; the public exponent solves c d == 1 mod phi.
RsaKeyPair rsa_keygen(std::uint64_t p1, std::uint64_t p2, std::uint64_t d);
std::uint64_t rsa_encrypt(std::uint64_t block, const RsaKeyPair& key);
std::uint64_t rsa_decrypt(std::uint64_t cipher, const RsaKeyPair& key);

struct RsaBreakResult {
    std::uint64_t p1 = 0, p2 = 0;
    std::uint64_t phi = 0;
    std::uint64_t recovered_d = 0;
    std::uint64_t decrypted_block = 0;
};

/// Recover the private key from (N, c) by factoring N with the order-
/// finding machinery, then decrypt a challenge ciphertext.
RsaBreakResult rsa_break(std::uint64_t N, std::uint64_t public_c, std::uint64_t challenge_cipher,
                         Rng& rng);

}  // namespace protocols
}  // namespace qit
