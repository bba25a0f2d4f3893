#include "qit/codes.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "qit/gates.hpp"

namespace qit {
namespace codes {

namespace {

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

int f2_rank(std::vector<Word> rows) {
    int rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] == 0) continue;
        ++rank;
        const int pivot = std::countr_zero(rows[i]);
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j] >> pivot & 1) rows[j] ^= rows[i];
    }
    return rank;
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------
// Information measures

double shannon_entropy(const std::vector<double>& p) {
    double total = 0;
    for (double v : p) {
        if (v < -1e-12) throw std::invalid_argument("negative probability");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distribution does not sum to 1");
    double h = 0;
    for (double v : p) h -= xlog2x(v);
    return h;
}

double h2(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("h2: p must lie in [0, 1]");
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double hq(double x, int q) {
    if (q < 2) throw std::invalid_argument("hq: q >= 2 required");
    const double top = 1.0 - 1.0 / q;
    if (x < 0.0 || x > top + 1e-12) throw std::invalid_argument("hq: x outside [0, 1 - 1/q]");
    if (x == 0.0) return 0.0;
    const double lq = std::log2(static_cast<double>(q));
    return x * std::log2(q - 1.0) / lq - xlog2x(x) / lq - xlog2x(1.0 - x) / lq;
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
    double total = 0;
    for (const auto& row : joint)
        for (double v : row) {
            if (v < -1e-12) throw std::invalid_argument("negative joint probability");
            total += v;
        }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("joint does not sum to 1");

    const std::size_t nx = joint.size();
    const std::size_t ny = joint.empty() ? 0 : joint[0].size();
    std::vector<double> px(nx, 0), py(ny, 0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            px[i] += joint[i][j];
            py[j] += joint[i][j];
        }
    double info = 0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (joint[i][j] > 0) info += joint[i][j] * std::log2(joint[i][j] / (px[i] * py[j]));
    return info;
}

double bsc_capacity(double p) { return 1.0 - h2(p); }

BoundCurves bound_curves(double delta, int q) {
    if (q < 2) throw std::invalid_argument("bound_curves: q >= 2 required");
    const double theta = 1.0 - 1.0 / q;
    if (delta < 0.0 || delta > theta + 1e-12)
        throw std::out_of_range("bound_curves: delta outside [0, 1 - 1/q]");

    BoundCurves b{};
    b.plotkin = 1.0 - delta / theta;
    b.hamming = 1.0 - hq(delta / 2.0, q);
    b.bassalygo_elias = 1.0 - hq(theta - std::sqrt(theta * (theta - delta)), q);
    b.gilbert_varshamov = 1.0 - hq(delta, q);
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
    if (s * s == q && s >= 2) {
        const double top = 1.0 - 1.0 / (s - 1.0);
        if (delta <= top) b.tvz = top - delta;
    }
    return b;
}

QuantumBounds quantum_bounds(double t_over_n) {
    if (t_over_n < 0.0 || t_over_n >= 0.75)
        throw std::out_of_range("quantum_bounds: t/n must lie in [0, 3/4)");
    QuantumBounds qb{};
    const double log3 = std::log2(3.0);
    qb.hamming_q = 1.0 - h2(t_over_n) - t_over_n * log3;
    // The lower bound is vacuous past t/n = 1/2 where its entropy argument
    // leaves [0, 1].
    qb.gv_q = (2.0 * t_over_n <= 1.0)
                  ? 1.0 - h2(2.0 * t_over_n) - 2.0 * t_over_n * log3
                  : std::numeric_limits<double>::quiet_NaN();
    return qb;
}

TypicalCount typical_count(double p, int n, double tol) {
    if (n < 1 || n > 24) throw std::invalid_argument("typical_count: n must lie in [1, 24]");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("typical_count: p outside [0, 1]");
    TypicalCount out{0, 0.0, 0.0};
    for (int zeros = 0; zeros <= n; ++zeros) {
        const double frac = static_cast<double>(zeros) / n;
        if (std::abs(frac - p) > tol / 2.0 + 1e-15) continue;
        const double ways = binomial(n, zeros);
        out.count += static_cast<std::uint64_t>(ways + 0.5);
        out.mass += ways * std::pow(p, zeros) * std::pow(1.0 - p, n - zeros);
    }
    out.log2_count_per_n = out.count > 0 ? std::log2(static_cast<double>(out.count)) / n : 0.0;
    return out;
}

// ---------------------------------------------------------------------
// Binary linear codes

std::string word_to_string(Word w, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (w >> i & 1) s[i] = '1';
    return s;
}

Word word_from_string(const std::string& s) {
    Word w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            w |= Word{1} << i;
        else if (s[i] != '0')
            throw std::invalid_argument("word string must be binary");
    }
    return w;
}

int weight(Word w) { return std::popcount(w); }

LinearCode::LinearCode(int n, std::vector<Word> generator, std::vector<Word> parity)
    : n_(n), g_(std::move(generator)), h_(std::move(parity)) {
    if (n < 1 || n > 31) throw std::invalid_argument("LinearCode: n must lie in [1, 31]");
    if (g_.size() + h_.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("LinearCode: k + (n-k) != n");
    const Word mask = (Word{1} << n) - 1;
    for (Word row : g_)
        if (row & ~mask) throw std::invalid_argument("generator row exceeds length n");
    for (Word row : h_)
        if (row & ~mask) throw std::invalid_argument("parity row exceeds length n");
    if (f2_rank(g_) != static_cast<int>(g_.size()))
        throw std::invalid_argument("generator rows are dependent");
    if (f2_rank(h_) != static_cast<int>(h_.size()))
        throw std::invalid_argument("parity rows are dependent");
    for (Word grow : g_)
        for (Word hrow : h_)
            if (std::popcount(grow & hrow) & 1)
                throw std::invalid_argument("G H^t != 0: not a parity matrix for this code");
}

Word LinearCode::encode(Word message) const {
    Word c = 0;
    for (std::size_t i = 0; i < g_.size(); ++i)
        if (message >> i & 1) c ^= g_[i];
    return c;
}

Word LinearCode::syndrome(Word u) const {
    Word s = 0;
    const int rows = static_cast<int>(h_.size());
    for (int i = 0; i < rows; ++i)
        if (std::popcount(h_[i] & u) & 1) s |= Word{1} << (rows - 1 - i);
    return s;
}

bool LinearCode::contains(Word u) const { return syndrome(u) == 0; }

std::vector<Word> LinearCode::codewords() const {
    std::vector<Word> out(std::size_t{1} << k());
    for (Word m = 0; m < out.size(); ++m) out[m] = encode(m);
    return out;
}

int LinearCode::min_distance() const {
    if (d_) return *d_;
    if (k() > 16) throw std::runtime_error("min_distance: exhaustive scan capped at k <= 16");
    int best = n_;
    for (Word m = 1; m < (Word{1} << k()); ++m) best = std::min(best, weight(encode(m)));
    d_ = best;
    return best;
}

LinearCode LinearCode::dual() const { return LinearCode(n_, h_, g_); }

bool LinearCode::is_subcode_of(const LinearCode& other) const {
    for (Word row : g_)
        if (!other.contains(row)) return false;
    return true;
}

SyndromeTable::SyndromeTable(const LinearCode& code) {
    const std::size_t want = std::size_t{1} << (code.n() - code.k());
    for (int w = 0; w <= code.n() && table_.size() < want; ++w)
        for (Word u = 0; u < (Word{1} << code.n()); ++u) {
            if (std::popcount(u) != w) continue;
            const Word s = code.syndrome(u);
            table_.emplace(s, u);  // first hit at each weight level is minimal
        }
}

Word SyndromeTable::leader(Word syndrome) const {
    const auto it = table_.find(syndrome);
    if (it == table_.end()) throw std::invalid_argument("syndrome outside table");
    return it->second;
}

LinearCode hamming_734() {
    const std::vector<Word> g{word_from_string("1010101"), word_from_string("0110011"),
                              word_from_string("0001111"), word_from_string("1110000")};
    const std::vector<Word> h{word_from_string("0001111"), word_from_string("0110011"),
                              word_from_string("1010101")};
    return LinearCode(7, g, h);
}

LinearCode repetition_code(int n, int q) {
    if (q != 2)
        throw std::invalid_argument("repetition_code: only the binary field is implemented");
    if (n < 2 || n > 31) throw std::invalid_argument("repetition_code: n must lie in [2, 31]");
    std::vector<Word> g{(Word{1} << n) - 1};
    std::vector<Word> h;
    for (int i = 0; i + 1 < n; ++i) h.push_back((Word{1} << i) | (Word{1} << (i + 1)));
    return LinearCode(n, g, h);
}

namespace {
Word message_of_codeword(const LinearCode& code, Word cw) {
    for (Word m = 0; m < (Word{1} << code.k()); ++m)
        if (code.encode(m) == cw) return m;
    throw std::invalid_argument("word is not a codeword");
}
}  // namespace

Word hamming_decode(const LinearCode& code, Word received) {
    const Word s = code.syndrome(received);
    Word corrected = received;
    if (s != 0) corrected ^= Word{1} << (s - 1);  // syndrome == 1-based error position
    return message_of_codeword(code, corrected);
}

Word coset_decode(const LinearCode& code, const SyndromeTable& table, Word received) {
    const Word leader = table.leader(code.syndrome(received));
    return message_of_codeword(code, received ^ leader);
}

// ---------------------------------------------------------------------
// CSS construction

namespace {

std::uint64_t word_to_state_index(Word w, int n) {
    // Word bit i is code position i+1 = qubit site n-1-i.
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i)
        if (w >> i & 1) idx |= std::uint64_t{1} << (n - 1 - i);
    return idx;
}

}  // namespace

CssCode css_code(const LinearCode& c1, const LinearCode& c2) {
    if (c1.n() != c2.n()) throw std::invalid_argument("css_code: codes live on different lengths");
    if (!c2.is_subcode_of(c1)) throw std::invalid_argument("css_code: C2 is not a subcode of C1");

    const auto subwords = c2.codewords();
    std::set<Word> seen;
    std::vector<std::vector<Word>> cosets;
    for (Word cw : c1.codewords()) {
        if (seen.count(cw)) continue;
        std::vector<Word> coset;
        for (Word v : subwords) {
            coset.push_back(cw ^ v);
            seen.insert(cw ^ v);
        }
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    std::sort(cosets.begin(), cosets.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    CssCode out{c1, c2, {}};
    const int n = c1.n();
    const double amp = 1.0 / std::sqrt(static_cast<double>(subwords.size()));
    for (const auto& coset : cosets) {
        std::vector<cplx> a(std::uint64_t{1} << n, cplx(0, 0));
        for (Word w : coset) a[word_to_state_index(w, n)] = amp;
        out.logical_basis.emplace_back(2, n, std::move(a));
    }
    return out;
}

CssCode steane_code() {
    const LinearCode c1 = hamming_734();
    return css_code(c1, c1.dual());
}

StateVector steane_encode(cplx alpha, cplx beta) {
    static const CssCode code = steane_code();
    std::vector<cplx> a(128, cplx(0, 0));
    for (std::uint64_t i = 0; i < 128; ++i)
        a[i] = alpha * code.logical_basis[0][i] + beta * code.logical_basis[1][i];
    StateVector s(2, 7, std::move(a));
    if (!s.is_normalized(1e-9)) throw std::invalid_argument("steane_encode: |a|^2+|b|^2 != 1");
    return s;
}

// ---------------------------------------------------------------------
// Steane correction

namespace {

struct ParsedPauli {
    char kind = 'I';
    int position = 0;  // 1-based, 0 for identity
};

ParsedPauli parse_single_pauli(const std::string& text, std::string* error) {
    if (text == "I" || text.empty()) return {};
    if (text.size() < 2 || (text[0] != 'X' && text[0] != 'Y' && text[0] != 'Z')) {
        *error = "unrecognized Pauli '" + text + "'";
        return {};
    }
    for (std::size_t i = 2; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            *error = "multi-qubit error '" + text + "' is outside this code's correction radius";
            return {};
        }
    const int pos = std::stoi(text.substr(1));
    if (pos < 1 || pos > 7) {
        *error = "position must lie in 1..7";
        return {};
    }
    return {text[0], pos};
}

// Couple a fresh 3-qubit ancilla through |v>|000> -> |v>|Hv> and read it
// out. The outcome must be deterministic for a correctable state; a mixed
// ancilla distribution is reported instead of being silently collapsed.
bool extract_syndrome(const StateVector& code_state, int* s1s2s3, std::string* error) {
    static const std::vector<Word> h_rows{word_from_string("0001111"),
                                          word_from_string("0110011"),
                                          word_from_string("1010101")};
    StateVector s = tensor(code_state, StateVector::zero(2, 3));
    // Layout: ancilla sites 2..0 (low), code sites 9..3 (high).
    const auto cnot = gates::standard_gate("CNOT");
    for (int row = 0; row < 3; ++row)
        for (int pos = 1; pos <= 7; ++pos)
            if (h_rows[row] >> (pos - 1) & 1) {
                const int code_site = 3 + (7 - pos);
                const int ancilla_site = 2 - row;
                s = apply_unitary(s, cnot.matrix, std::vector<int>{ancilla_site, code_site});
            }
    const std::vector<int> ancilla{0, 1, 2};
    const auto dist = outcome_distribution(s, ancilla);
    int best = 0;
    for (int o = 1; o < 8; ++o)
        if (dist[o] > dist[best]) best = o;
    if (dist[best] < 1.0 - 1e-9) {
        *error = "syndrome readout is not deterministic: state is outside the single-error space";
        return false;
    }
    // Outcome index packs site 0 = row 2 as bit 0: s1 = bit 2, s2 = bit 1,
    // s3 = bit 0.
    s1s2s3[0] = best >> 2 & 1;
    s1s2s3[1] = best >> 1 & 1;
    s1s2s3[2] = best >> 0 & 1;
    return true;
}

std::string reversed_syndrome_string(const int* s) {
    // The printed convention is reversed binary: "110" names position 3.
    std::string out;
    out += static_cast<char>('0' + s[2]);
    out += static_cast<char>('0' + s[1]);
    out += static_cast<char>('0' + s[0]);
    return out;
}

int syndrome_position(const int* s) { return s[0] * 4 + s[1] * 2 + s[2]; }

}  // namespace

SteaneCorrection steane_correct(const StateVector& encoded, const std::string& pauli_error) {
    SteaneCorrection out{false, "", "", "", 0, 0, encoded};
    if (encoded.local_dim() != 2 || encoded.num_sites() != 7) {
        out.message = "state must live on 7 qubits";
        return out;
    }
    std::string parse_error;
    const ParsedPauli err = parse_single_pauli(pauli_error, &parse_error);
    if (!parse_error.empty()) {
        out.message = parse_error;
        return out;
    }

    const auto x = gates::standard_gate("X");
    const auto z = gates::standard_gate("Z");
    const auto y = gates::standard_gate("Y");
    const auto h = gates::standard_gate("H");

    StateVector s = encoded;
    if (err.kind == 'X') s = apply_unitary(s, x.matrix, std::vector<int>{7 - err.position});
    if (err.kind == 'Z') s = apply_unitary(s, z.matrix, std::vector<int>{7 - err.position});
    if (err.kind == 'Y') s = apply_unitary(s, y.matrix, std::vector<int>{7 - err.position});

    auto hadamard_all = [&](StateVector v) {
        for (int q = 0; q < 7; ++q) v = apply_unitary(v, h.matrix, std::vector<int>{q});
        return v;
    };

    // Bit-flip pass.
    int syn[3];
    if (!extract_syndrome(s, syn, &out.message)) return out;
    out.bit_syndrome = reversed_syndrome_string(syn);
    out.corrected_bit_position = syndrome_position(syn);
    if (out.corrected_bit_position > 0)
        s = apply_unitary(s, x.matrix, std::vector<int>{7 - out.corrected_bit_position});

    // Phase-flip pass: Z_p = H^x7 X_p H^x7, so correct X in the rotated
    // frame.
    s = hadamard_all(s);
    if (!extract_syndrome(s, syn, &out.message)) return out;
    out.phase_syndrome = reversed_syndrome_string(syn);
    out.corrected_phase_position = syndrome_position(syn);
    if (out.corrected_phase_position > 0)
        s = apply_unitary(s, x.matrix, std::vector<int>{7 - out.corrected_phase_position});
    s = hadamard_all(s);

    out.ok = true;
    out.state = std::move(s);
    return out;
}

}  // namespace codes
}  // namespace qit
