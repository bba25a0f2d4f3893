#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qit {
namespace tm {

enum class Move : std::uint8_t { Left, Right };

/// Right-hand side of an instruction: write, move, go to state (or halt).
struct Action {
    int next_state;  // 1..S, or kHalt
    int write;       // symbol
    Move move;
};

constexpr int kHalt = 0;

/// Deterministic machine over states 1..S and symbols 0..A (0 = blank).
/// The table is a partial map; by construction at most one instruction per
/// (state, symbol) pair.
struct TuringMachine {
    int num_states = 0;
    int alphabet = 2;  // symbol count including blank
    std::map<std::pair<int, int>, Action> table;

    void add(int state, int symbol, int next_state, int write, Move move);
    std::string describe() const;
};

struct TapeRun {
    std::map<long long, int> tape;  // sparse, nonblank cells only
    long long head = 0;
    std::uint64_t steps = 0;
    bool halted = false;
    int ones_written = 0;  // nonblank cells at the end
};

/// Run on the given initial tape up to max_steps. Exceeding the cap is
/// reported as halted = false, not an error.
TapeRun run(const TuringMachine& machine, const std::map<long long, int>& initial_tape,
            std::uint64_t max_steps);

/// The two-state machine that marches right over 1s, writes a single 1 at
/// the first blank, and stops.
TuringMachine two_state_example();
/// Unary adder: erase the leftmost 1, turn the separating blank into a 1.
TuringMachine adding_machine();
/// Three-state champion: 13 moves, six 1s from a blank tape.
TuringMachine three_state_beaver();

/// Unary tape with n1 ones, a blank, then n2 ones, head on the leftmost 1.
std::map<long long, int> unary_addition_tape(int n1, int n2);

struct BusyBeaverResult {
    int sigma = 0;                 // max 1s over halting machines
    std::uint64_t sigma_prime = 0; // max steps over halting machines
    TuringMachine sigma_witness;
    TuringMachine steps_witness;
    std::uint64_t machines_enumerated = 0;
    std::uint64_t halted = 0;
};

/// Exhaustive search over all [4(S+1)]^(2S) two-symbol machines. Machines
/// exceeding the per-machine step cap count as non-halting; caps default
/// to 1000 for S <= 2 and 10^5 for S = 3, both far above the known maxima
/// at those sizes. S = 3 must be explicitly allowed; it enumerates
/// 16.7M machines.
BusyBeaverResult busy_beaver_search(int S, bool allow_s3 = false,
                                    std::optional<std::uint64_t> step_cap = std::nullopt);

/// Number of S-state 2-symbol machines: [4(S+1)]^(2S).
std::uint64_t machine_count(int S);

/// Decode machine index -> instruction table (the enumeration order used
/// by the search).
TuringMachine machine_from_index(int S, std::uint64_t index);

std::string machine_to_json(const TuringMachine& m);
TuringMachine machine_from_json(const std::string& text);

}  // namespace tm
}  // namespace qit
