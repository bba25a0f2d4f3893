#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qit/state.hpp"

namespace qit {
namespace codes {

// -- classical information measures --------------------------------------

/// H(p) in bits, 0 log 0 := 0. Throws unless p is a distribution.
double shannon_entropy(const std::vector<double>& p);
/// Binary entropy of a single probability.
double h2(double p);
/// q-ary entropy H_q(x) on [0, 1 - 1/q].
double hq(double x, int q);
/// I(X:Y) in bits from a joint distribution (rows = x, cols = y).
double mutual_information(const std::vector<std::vector<double>>& joint);
/// Binary symmetric channel capacity 1 - H2(p).
double bsc_capacity(double p);

/// Asymptotic rate-vs-distance bounds at relative distance delta.
struct BoundCurves {
    double plotkin;
    double hamming;
    double bassalygo_elias;
    double gilbert_varshamov;
    std::optional<double> tvz;  // square q only, on [0, 1 - 1/(sqrt(q)-1)]
};

BoundCurves bound_curves(double delta, int q);

/// Quantum Hamming upper / Gilbert-Varshamov lower bounds at t/n.
struct QuantumBounds {
    double hamming_q;
    double gv_q;
};

QuantumBounds quantum_bounds(double t_over_n);

/// Count binary strings whose zero-fraction lies in a window of total
/// width `tol` centered on p, along with their probability mass under the
/// (p, 1-p) product measure. n <= 24.
struct TypicalCount {
    std::uint64_t count;
    double mass;
    double log2_count_per_n;
};

TypicalCount typical_count(double p, int n, double tol);

// -- binary linear codes --------------------------------------------------

/// Words are bitmasks with bit 0 = code position 1 (leftmost in written
/// form); to_word_string prints position order.
using Word = std::uint32_t;

std::string word_to_string(Word w, int n);
Word word_from_string(const std::string& s);
int weight(Word w);

/// [n, k, d] code over F2 with generator G (k rows) and parity H (n-k
/// rows). G H^t = 0; d is the minimum nonzero codeword weight (cached,
/// exhaustive scan capped at k <= 16).
class LinearCode {
  public:
    LinearCode(int n, std::vector<Word> generator, std::vector<Word> parity);

    int n() const { return n_; }
    int k() const { return static_cast<int>(g_.size()); }
    const std::vector<Word>& generator() const { return g_; }
    const std::vector<Word>& parity() const { return h_; }

    Word encode(Word message) const;
    Word syndrome(Word u) const;  // bits packed with parity row 0 as MSB
    bool contains(Word u) const;
    std::vector<Word> codewords() const;  // 2^k words
    int min_distance() const;             // cached

    LinearCode dual() const;
    bool is_subcode_of(const LinearCode& other) const;

  private:
    int n_;
    std::vector<Word> g_, h_;
    mutable std::optional<int> d_;
};

/// Syndrome -> minimum-weight coset leader for full table decoding.
class SyndromeTable {
  public:
    explicit SyndromeTable(const LinearCode& code);
    Word leader(Word syndrome) const;
    const std::map<Word, Word>& table() const { return table_; }

  private:
    std::map<Word, Word> table_;
};

/// The paper's [7,4,3] binary Hamming code with its explicit parity
/// matrix; syndromes read directly as the binary position of a single
/// error (MSB first).
LinearCode hamming_734();
/// [n, 1, n] repetition code (binary; n odd recommended).
LinearCode repetition_code(int n, int q = 2);

/// Decode by single-error syndrome shortcut when the syndrome is nonzero,
/// returning the corrected codeword's message.
Word hamming_decode(const LinearCode& code, Word received);
/// Generic coset decoding through a syndrome table.
Word coset_decode(const LinearCode& code, const SyndromeTable& table, Word received);

// -- CSS / Steane ----------------------------------------------------------

/// CSS code from C2 subset of C1: basis states are coset superpositions
/// |w + C2> with amplitude 2^{-k2/2}.
struct CssCode {
    LinearCode c1;
    LinearCode c2;
    std::vector<StateVector> logical_basis;  // 2^(k1-k2) states on n qubits
};

CssCode css_code(const LinearCode& c1, const LinearCode& c2);
/// [[7,1,3]] code from the Hamming [7,4,3] code and its dual.
CssCode steane_code();

/// alpha |0bar> + beta |1bar>
StateVector steane_encode(cplx alpha, cplx beta);

/// Outcome of one error-correction cycle. Syndrome strings are printed in
/// the reversed-binary convention: "110" names position 3.
struct SteaneCorrection {
    bool ok = false;
    std::string message;
    std::string bit_syndrome;    // X-error pass
    std::string phase_syndrome;  // Z-error pass
    int corrected_bit_position = 0;    // 0 = none, else 1..7
    int corrected_phase_position = 0;  // 0 = none, else 1..7
    StateVector state;
};

/// Apply a single-qubit Pauli error ("I", "X4", "Z2", "Y7"; positions are
/// 1-based, leftmost = 1) to an encoded state, then run ancilla-based bit
/// and phase correction. Multi-qubit error strings are rejected with a
/// diagnostic instead of silently corrupting the state.
SteaneCorrection steane_correct(const StateVector& encoded, const std::string& pauli_error);

}  // namespace codes
}  // namespace qit
