#include "qit/turing.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

namespace qit {
namespace tm {

void TuringMachine::add(int state, int symbol, int next_state, int write, Move move) {
    if (state < 1 || state > num_states) throw std::invalid_argument("state out of range");
    if (symbol < 0 || symbol >= alphabet || write < 0 || write >= alphabet)
        throw std::invalid_argument("symbol out of range");
    if (next_state < 0 || next_state > num_states)
        throw std::invalid_argument("next state out of range");
    if (!table.emplace(std::make_pair(state, symbol), Action{next_state, write, move}).second)
        throw std::invalid_argument("two instructions share an initial (state, symbol) pair");
}

std::string TuringMachine::describe() const {
    std::ostringstream out;
    for (const auto& [key, act] : table) {
        out << "(s" << key.first << "," << key.second << ") -> (";
        if (act.next_state == kHalt)
            out << "halt";
        else
            out << "s" << act.next_state;
        out << "," << act.write << "," << (act.move == Move::Left ? "L" : "R") << ")\n";
    }
    return out.str();
}

TapeRun run(const TuringMachine& machine, const std::map<long long, int>& initial_tape,
            std::uint64_t max_steps) {
    TapeRun result;
    result.tape = initial_tape;
    int state = 1;
    for (std::uint64_t step = 0; step < max_steps; ++step) {
        const auto cell = result.tape.find(result.head);
        const int symbol = cell == result.tape.end() ? 0 : cell->second;
        const auto inst = machine.table.find({state, symbol});
        if (inst == machine.table.end()) {
            // No instruction for this pair: treat as an immediate stop.
            result.halted = true;
            break;
        }
        const Action& act = inst->second;
        if (act.write == 0)
            result.tape.erase(result.head);
        else
            result.tape[result.head] = act.write;
        result.head += act.move == Move::Left ? -1 : 1;
        ++result.steps;
        state = act.next_state;
        if (state == kHalt) {
            result.halted = true;
            break;
        }
    }
    result.ones_written = static_cast<int>(result.tape.size());
    return result;
}

TuringMachine two_state_example() {
    TuringMachine m;
    m.num_states = 2;
    m.add(1, 1, 1, 1, Move::Right);
    m.add(1, 0, 2, 1, Move::Right);
    m.add(2, 0, kHalt, 0, Move::Right);
    m.add(2, 1, kHalt, 1, Move::Right);
    return m;
}

TuringMachine adding_machine() {
    TuringMachine m;
    m.num_states = 2;
    m.add(1, 1, 2, 0, Move::Right);    // erase the leftmost 1
    m.add(2, 1, 2, 1, Move::Right);    // scan across the first block
    m.add(2, 0, kHalt, 1, Move::Right);  // separator becomes a 1
    return m;
}

TuringMachine three_state_beaver() {
    TuringMachine m;
    m.num_states = 3;
    m.add(1, 0, 2, 1, Move::Right);
    m.add(1, 1, 3, 1, Move::Left);
    m.add(2, 0, 1, 1, Move::Left);
    m.add(2, 1, 2, 1, Move::Right);
    m.add(3, 0, 2, 1, Move::Left);
    m.add(3, 1, kHalt, 1, Move::Right);
    return m;
}

std::map<long long, int> unary_addition_tape(int n1, int n2) {
    std::map<long long, int> tape;
    for (int i = 0; i < n1; ++i) tape[i] = 1;
    for (int i = 0; i < n2; ++i) tape[n1 + 1 + i] = 1;
    return tape;
}

std::uint64_t machine_count(int S) {
    std::uint64_t base = 4ull * (S + 1), out = 1;
    for (int i = 0; i < 2 * S; ++i) out *= base;
    return out;
}

TuringMachine machine_from_index(int S, std::uint64_t index) {
    // Each of the 2S (state, symbol) pairs picks one of 4(S+1) actions:
    // write in {0,1} x move in {L,R} x next state in {1..S, halt}.
    TuringMachine m;
    m.num_states = S;
    const std::uint64_t actions = 4ull * (S + 1);
    for (int state = 1; state <= S; ++state)
        for (int symbol = 0; symbol < 2; ++symbol) {
            const std::uint64_t code = index % actions;
            index /= actions;
            const int write = static_cast<int>(code & 1);
            const Move move = (code >> 1 & 1) ? Move::Right : Move::Left;
            const int next = static_cast<int>(code >> 2);  // 0 = halt, else 1..S
            m.add(state, symbol, next, write, move);
        }
    return m;
}

namespace {

// Compact runner used by the exhaustive search: flat transition table,
// deque tape, and a translation-invariant cycle check (state plus tape
// contents relative to the head repeating implies the machine never
// halts, even for runners drifting along the tape).
struct SearchOutcome {
    bool halted = false;
    std::uint64_t steps = 0;
    int ones = 0;
};

struct FlatMachine {
    // Indexed by (state-1)*2 + symbol.
    std::uint8_t write[6];
    std::int8_t move[6];
    std::uint8_t next[6];  // 0 = halt
    bool has_halt = false;
};

FlatMachine decode(int S, std::uint64_t index) {
    FlatMachine f{};
    const std::uint64_t actions = 4ull * (S + 1);
    for (int slot = 0; slot < 2 * S; ++slot) {
        const std::uint64_t code = index % actions;
        index /= actions;
        f.write[slot] = static_cast<std::uint8_t>(code & 1);
        f.move[slot] = (code >> 1 & 1) ? 1 : -1;
        f.next[slot] = static_cast<std::uint8_t>(code >> 2);
        if (f.next[slot] == 0) f.has_halt = true;
    }
    return f;
}

struct Snapshot {
    int state = -1;
    long long left = 0, right = 0;  // allocated span relative to the head
    std::vector<std::uint8_t> cells;

    bool matches(int st, const std::uint8_t* lo, const std::uint8_t* hi,
                 const std::uint8_t* head) const {
        if (st != state) return false;
        if (head - lo != left || hi - head != right) return false;
        return std::equal(cells.begin(), cells.end(), lo);
    }
};

// Monotone stack of frontier entries. A machine that steps onto fresh
// blank territory twice in the same state, without backtracking past the
// earlier entry point in between, repeats the excursion shifted forever
// and provably never halts. Entries are popped as soon as the head
// undercuts them, so any surviving same-state entry witnesses a loop.
struct FrontierStack {
    std::vector<std::pair<long long, int>> entries;  // (position, state)
    int state_count[4] = {0, 0, 0, 0};

    void reset() {
        entries.clear();
        state_count[0] = state_count[1] = state_count[2] = state_count[3] = 0;
    }
    // Returns true when the new frontier event proves non-halting.
    bool on_fresh(long long pos, int state) {
        if (state_count[state] > 0) return true;
        entries.emplace_back(pos, state);
        ++state_count[state];
        return false;
    }
    void undercut(long long pos) {  // head moved to `pos`; drop overtaken entries
        while (!entries.empty() && entries.back().first > pos) {
            --state_count[entries.back().second];
            entries.pop_back();
        }
    }
    void undercut_rev(long long pos) {  // mirror for the left frontier
        while (!entries.empty() && entries.back().first < pos) {
            --state_count[entries.back().second];
            entries.pop_back();
        }
    }
};

struct Tape {
    std::vector<std::uint8_t> buf;
    long long origin = 0;  // buf index of absolute position 0
    long long lo = 0, hi = 0;  // allocated absolute range [lo, hi]

    Tape() : buf(64, 0), origin(32), lo(-32), hi(31) {}

    std::uint8_t* cell(long long pos) { return buf.data() + (origin + pos); }

    void grow_left() {
        const std::size_t extra = buf.size();
        buf.insert(buf.begin(), extra, 0);
        origin += static_cast<long long>(extra);
        lo -= static_cast<long long>(extra);
    }
    void grow_right() {
        const std::size_t extra = buf.size();
        buf.insert(buf.end(), extra, 0);
        hi += static_cast<long long>(extra);
    }
};

SearchOutcome run_flat(const FlatMachine& f, std::uint64_t cap, FrontierStack& right_stack,
                       FrontierStack& left_stack) {
    SearchOutcome out;
    if (!f.has_halt) return out;  // cannot halt, skip the simulation

    Tape tape;
    long long pos = 0, max_pos = 0, min_pos = 0;
    int state = 1;
    right_stack.reset();
    left_stack.reset();
    Snapshot checkpoint;
    std::uint64_t next_snapshot = 4;

    for (std::uint64_t step = 0; step < cap; ++step) {
        std::uint8_t* cell = tape.cell(pos);
        const int slot = (state - 1) * 2 + *cell;
        *cell = f.write[slot];
        pos += f.move[slot];
        state = f.next[slot];
        out.steps = step + 1;
        if (state == 0) {
            out.halted = true;
            int ones = 0;
            for (long long p = min_pos; p <= max_pos; ++p) ones += *tape.cell(p) != 0;
            out.ones = ones;
            return out;
        }

        if (pos > max_pos) {
            max_pos = pos;
            if (pos > tape.hi) tape.grow_right();
            if (right_stack.on_fresh(pos, state)) return out;  // drifts right forever
        } else {
            right_stack.undercut(pos);
        }
        if (pos < min_pos) {
            min_pos = pos;
            if (pos < tape.lo) tape.grow_left();
            if (left_stack.on_fresh(pos, state)) return out;  // drifts left forever
        } else {
            left_stack.undercut_rev(pos);
        }

        // Brent-style cycle probe on translation-invariant configurations
        // catches bounded loops.
        if (checkpoint.matches(state, tape.cell(min_pos), tape.cell(max_pos), tape.cell(pos)))
            return out;
        if (out.steps == next_snapshot) {
            checkpoint.state = state;
            checkpoint.left = pos - min_pos;
            checkpoint.right = max_pos - pos;
            checkpoint.cells.assign(tape.cell(min_pos), tape.cell(max_pos) + 1);
            next_snapshot *= 2;
        }
    }
    return out;
}

}  // namespace

BusyBeaverResult busy_beaver_search(int S, bool allow_s3, std::optional<std::uint64_t> step_cap) {
    if (S < 1 || S > 3) throw std::invalid_argument("busy_beaver_search: S must lie in 1..3");
    if (S == 3 && !allow_s3)
        throw std::invalid_argument("S = 3 enumerates 16.7M machines; pass allow_s3 to confirm");
    const std::uint64_t cap = step_cap.value_or(S <= 2 ? 1000 : 100000);
    const std::uint64_t total = machine_count(S);

    BusyBeaverResult best;
    best.machines_enumerated = total;
    std::uint64_t best_sigma_index = 0, best_steps_index = 0;
    int sigma = 0;
    std::uint64_t sigma_prime = 0, halted = 0;

#pragma omp parallel
    {
        int local_sigma = 0;
        std::uint64_t local_prime = 0, local_halted = 0;
        std::uint64_t local_sigma_idx = 0, local_prime_idx = 0;
        FrontierStack right_stack, left_stack;
#pragma omp for schedule(dynamic, 4096)
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
            const SearchOutcome o = run_flat(decode(S, static_cast<std::uint64_t>(idx)), cap,
                                             right_stack, left_stack);
            if (!o.halted) continue;
            ++local_halted;
            if (o.ones > local_sigma ||
                (o.ones == local_sigma && static_cast<std::uint64_t>(idx) < local_sigma_idx)) {
                local_sigma = o.ones;
                local_sigma_idx = static_cast<std::uint64_t>(idx);
            }
            if (o.steps > local_prime ||
                (o.steps == local_prime && static_cast<std::uint64_t>(idx) < local_prime_idx)) {
                local_prime = o.steps;
                local_prime_idx = static_cast<std::uint64_t>(idx);
            }
        }
#pragma omp critical
        {
            halted += local_halted;
            if (local_sigma > sigma ||
                (local_sigma == sigma && local_sigma_idx < best_sigma_index)) {
                sigma = local_sigma;
                best_sigma_index = local_sigma_idx;
            }
            if (local_prime > sigma_prime ||
                (local_prime == sigma_prime && local_prime_idx < best_steps_index)) {
                sigma_prime = local_prime;
                best_steps_index = local_prime_idx;
            }
        }
    }

    best.sigma = sigma;
    best.sigma_prime = sigma_prime;
    best.halted = halted;
    best.sigma_witness = machine_from_index(S, best_sigma_index);
    best.steps_witness = machine_from_index(S, best_steps_index);
    return best;
}

std::string machine_to_json(const TuringMachine& m) {
    nlohmann::ordered_json j;
    j["states"] = m.num_states;
    j["alphabet"] = m.alphabet;
    j["instructions"] = nlohmann::ordered_json::array();
    for (const auto& [key, act] : m.table) {
        nlohmann::ordered_json inst;
        inst["state"] = key.first;
        inst["symbol"] = key.second;
        inst["next"] = act.next_state;
        inst["write"] = act.write;
        inst["move"] = act.move == Move::Left ? "L" : "R";
        j["instructions"].push_back(inst);
    }
    return j.dump(2);
}

TuringMachine machine_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TuringMachine m;
    m.num_states = j.at("states").get<int>();
    m.alphabet = j.value("alphabet", 2);
    for (const auto& inst : j.at("instructions")) {
        const std::string move = inst.at("move").get<std::string>();
        m.add(inst.at("state").get<int>(), inst.at("symbol").get<int>(),
              inst.at("next").get<int>(), inst.at("write").get<int>(),
              move == "L" ? Move::Left : Move::Right);
    }
    return m;
}

}  // namespace tm
}  // namespace qit
