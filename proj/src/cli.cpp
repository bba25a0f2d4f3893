#include "qit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qit/algorithms.hpp"
#include "qit/codes.hpp"
#include "qit/gates.hpp"
#include "qit/hardware.hpp"
#include "qit/protocols.hpp"
#include "qit/qinfo.hpp"
#include "qit/turing.hpp"

namespace qit {
namespace cli {

namespace {

using nlohmann::ordered_json;
using std::numbers::pi;

struct Options {
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Options& opt, bool with_format = false) {
    cmd->add_option("--seed", opt.seed, "random seed (runs are reproducible bit for bit)");
    cmd->add_option("-o,--output", opt.output, "write the result to this file instead of stdout");
    if (with_format)
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
}

// ------------------------------------------------------------------ shor

ordered_json cmd_shor(std::uint64_t n, std::uint64_t a, const std::string& backend_name,
                      Rng& rng) {
    const auto backend = backend_name == "statevector" ? algo::ShorBackend::StateVector
                                                       : algo::ShorBackend::Analytic;
    ordered_json j;
    j["algorithm"] = "shor";
    j["n"] = n;
    j["backend"] = backend_name;
    if (a == 0) {
        const auto res = algo::factor(n, rng, backend);
        j["success"] = res.success;
        if (res.success) j["factors"] = {res.f1, res.f2};
        ordered_json attempts = ordered_json::array();
        for (const auto& att : res.attempts) {
            ordered_json aj;
            aj["a"] = att.a;
            aj["order"] = att.order;
            aj["failure"] = att.failure == algo::FactorFailure::None        ? "none"
                            : att.failure == algo::FactorFailure::OrderOdd ? "order_odd"
                                                                           : "sqrt_is_minus_one";
            attempts.push_back(aj);
        }
        j["attempts"] = attempts;
        return j;
    }
    j["a"] = a;
    const auto att = algo::factor_with_base(n, a, backend, rng);
    j["order"] = att.order;
    j["failure"] = att.failure == algo::FactorFailure::None        ? "none"
                   : att.failure == algo::FactorFailure::OrderOdd ? "order_odd"
                                                                  : "sqrt_is_minus_one";
    j["factors"] = {std::min(att.f1, att.f2), std::max(att.f1, att.f2)};
    return j;
}

// ---------------------------------------------------------------- grover

ordered_json cmd_grover(int qubits, std::uint64_t marked, double phi, int iterations, Rng& rng) {
    const double n_items = std::pow(2.0, qubits);
    const auto params = phi == 0.0 ? algo::GroverParams::standard()
                                   : algo::GroverParams::phase(phi);
    const int m_formula = algo::grover_optimal_m(n_items, phi);
    const int m = iterations >= 0 ? iterations : m_formula;
    const auto run = algo::grover_search(qubits, marked, params, m, rng);
    ordered_json j;
    j["algorithm"] = "grover";
    j["items"] = static_cast<std::uint64_t>(n_items);
    j["marked"] = marked;
    j["phi"] = phi;
    j["iterations"] = m;
    j["iterations_formula"] = m_formula;
    j["iterations_exact_formula"] = algo::grover_exact_m(n_items);
    j["success_probability"] = run.success_probability;
    j["sampled_outcome"] = run.sampled_outcome;
    j["found"] = run.sampled_outcome == marked;
    return j;
}

// ----------------------------------------------------------------- simon

ordered_json cmd_simon(int bits, std::uint64_t period, Rng& rng) {
    if (period == 0 || period >= (1ull << bits))
        throw std::invalid_argument("simon: period must be a nonzero n-bit value");
    // Canonical 2-to-1 function with the requested period.
    algo::BooleanOracle oracle(bits, bits,
                               [period](std::uint64_t x) { return std::min(x, x ^ period); });
    const auto res = algo::simon(oracle, rng);
    ordered_json j;
    j["algorithm"] = "simon";
    j["bits"] = bits;
    j["period"] = period;
    j["recovered"] = res.period;
    j["queries"] = res.queries;
    j["samples"] = res.samples;
    return j;
}

// -------------------------------------------------------------------- dj

ordered_json cmd_dj(int bits, const std::string& kind, Rng& rng) {
    std::function<std::uint64_t(std::uint64_t)> f;
    if (kind == "const0")
        f = [](std::uint64_t) { return 0ull; };
    else if (kind == "const1")
        f = [](std::uint64_t) { return 1ull; };
    else if (kind == "lsb")
        f = [](std::uint64_t x) { return x & 1; };
    else if (kind == "parity")
        f = [](std::uint64_t x) { return static_cast<std::uint64_t>(std::popcount(x) & 1); };
    else
        throw std::invalid_argument("dj: kind must be const0, const1, lsb or parity");
    algo::BooleanOracle oracle(bits, 1, f);
    const auto res = algo::deutsch_jozsa(oracle, rng);
    ordered_json j;
    j["algorithm"] = "deutsch-jozsa";
    j["bits"] = bits;
    j["kind"] = kind;
    j["verdict"] = res.verdict == algo::DjVerdict::Constant ? "constant" : "balanced";
    j["source_outcome"] = res.source_outcome;
    j["queries"] = res.queries;
    return j;
}

// -------------------------------------------------------------- teleport

ordered_json cmd_teleport(double theta, double phi, Rng& rng) {
    std::vector<cplx> amps{std::cos(theta / 2),
                           std::exp(cplx(0, phi)) * std::sin(theta / 2)};
    StateVector psi(2, 1, amps);
    const auto res = protocols::teleport(psi, rng);
    ordered_json j;
    j["protocol"] = "teleportation";
    j["theta"] = theta;
    j["phi"] = phi;
    j["branch"] = res.branch;
    j["overlap"] = overlap(psi, res.bob_state);
    j["classical_bits"] = res.transcript.classical_bits_from(protocols::Party::Alice);
    j["ebits"] = res.transcript.ebits_consumed;
    return j;
}

// ----------------------------------------------------------------- dense

ordered_json cmd_dense(int message, Rng& rng) {
    const auto encoded = protocols::dense_encode(message);
    const auto decoded = protocols::dense_decode(encoded, rng);
    ordered_json j;
    j["protocol"] = "dense-coding";
    j["message"] = message;
    j["decoded"] = decoded.message;
    j["match"] = decoded.message == message;
    return j;
}

// ------------------------------------------------------------------- qkd

ordered_json cmd_bb84(int n, bool eve, double loss, int check, Rng& rng) {
    auto session = protocols::bb84_session(n, eve, rng, loss);
    ordered_json j;
    j["protocol"] = "bb84";
    j["n"] = n;
    j["eve"] = eve;
    j["sifted_len"] = session.sifted_alice.size();
    j["qber"] = session.qber;
    if (check > 0) {
        j["check_sample"] = check;
        j["discrepancy_found"] = session.check_sample_detects(check, rng);
        j["final_key_len"] = session.final_key_alice.size();
    }
    j["detection_prob"] = protocols::QKDSession::detection_probability(check > 0 ? check : 72);
    return j;
}

ordered_json cmd_bbm92(int n, Rng& rng) {
    const auto session = protocols::bbm92_session(n, rng);
    ordered_json j;
    j["protocol"] = "bbm92";
    j["n"] = n;
    j["sifted_len"] = session.sifted_alice.size();
    j["qber"] = session.qber;
    j["keys_match"] = session.sifted_alice == session.sifted_bob;
    return j;
}

// --------------------------------------------------------------- distill

int cmd_distill(double f0, double target, const std::string& mode, std::uint64_t pairs,
                const Options& opt, Rng& rng, std::string& out) {
    const auto dmode = mode == "simulate" ? qinfo::DistillMode::Simulate
                                          : qinfo::DistillMode::Analytic;
    struct Row {
        int round;
        double f;
        double success;
        double pairs;
    };
    std::vector<Row> rows;
    double f = f0;
    double remaining = static_cast<double>(pairs);
    rows.push_back({0, f, 0.0, remaining});
    for (int round = 1; f < target && round <= 64; ++round) {
        const auto r = qinfo::bbpssw_round(f, dmode, rng);
        remaining = remaining / 2.0 * r.success_probability;
        f = r.f_out;
        rows.push_back({round, f, r.success_probability, remaining});
    }
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "round,F,success_rate,pairs_remaining\n";
        for (const auto& r : rows)
            csv << r.round << "," << r.f << "," << r.success << "," << r.pairs << "\n";
        out = csv.str();
        return 0;
    }
    ordered_json j;
    j["protocol"] = "bbpssw";
    j["mode"] = mode;
    j["f_in"] = f0;
    j["target"] = target;
    j["rounds"] = rows.size() - 1;
    j["f_out"] = f;
    ordered_json traj = ordered_json::array();
    for (const auto& r : rows)
        traj.push_back({{"round", r.round},
                        {"F", r.f},
                        {"success_rate", r.success},
                        {"pairs_remaining", r.pairs}});
    j["trajectory"] = traj;
    out = j.dump(2) + "\n";
    return 0;
}

// ---------------------------------------------------------------- steane

ordered_json cmd_steane(const std::string& error, double alpha_theta, Rng&) {
    const cplx alpha = std::cos(alpha_theta / 2);
    const cplx beta = std::sin(alpha_theta / 2);
    const auto encoded = codes::steane_encode(alpha, beta);
    const auto res = codes::steane_correct(encoded, error);
    ordered_json j;
    j["code"] = "steane-7-1-3";
    j["error"] = error;
    j["ok"] = res.ok;
    if (!res.ok) {
        j["diagnostic"] = res.message;
        return j;
    }
    j["bit_syndrome"] = res.bit_syndrome;
    j["phase_syndrome"] = res.phase_syndrome;
    j["fidelity"] = std::pow(overlap(encoded, res.state), 2);
    return j;
}

// --------------------------------------------------------------- hamming

ordered_json cmd_hamming(const std::string& word) {
    const auto code = codes::hamming_734();
    const codes::Word received = codes::word_from_string(word);
    const codes::Word syndrome = code.syndrome(received);
    const codes::Word message = codes::hamming_decode(code, received);
    ordered_json j;
    j["code"] = "hamming-7-4-3";
    j["received"] = word;
    // Syndrome bits read MSB first give the 1-based error position.
    j["syndrome"] = std::string{static_cast<char>('0' + (syndrome >> 2 & 1)),
                                static_cast<char>('0' + (syndrome >> 1 & 1)),
                                static_cast<char>('0' + (syndrome & 1))};
    j["error_position"] = syndrome;
    j["corrected"] = codes::word_to_string(
        syndrome == 0 ? received : received ^ (codes::Word{1} << (syndrome - 1)), 7);
    j["message"] = message;
    return j;
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(int q, int points, const Options& opt, std::string& out) {
    std::ostringstream csv;
    csv << "delta,plotkin,hamming,elias,gv,tvz\n";
    const double top = 1.0 - 1.0 / q;
    for (int i = 0; i < points; ++i) {
        const double delta = top * i / (points - 1);
        const auto b = codes::bound_curves(delta, q);
        csv << delta << "," << b.plotkin << "," << b.hamming << "," << b.bassalygo_elias << ","
            << b.gilbert_varshamov << ",";
        if (b.tvz) csv << *b.tvz;
        csv << "\n";
    }
    out = csv.str();
    return 0;
}

// ------------------------------------------------------------------- qft

ordered_json cmd_qft(int k, int d) {
    const auto circuit = gates::qft_circuit(k, d);
    int fourier = 0, cphase = 0, swaps = 0;
    for (const auto& s : circuit.steps) {
        if (s.gate.name == "F" || s.gate.name == "H") ++fourier;
        if (s.gate.name == "CPH") ++cphase;
        if (s.gate.name == "SWAP") ++swaps;
    }
    ordered_json j;
    j["circuit"] = "qft";
    j["K"] = k;
    j["d"] = d;
    j["counts"] = {{"fourier", fourier}, {"cphase", cphase}, {"swap", swaps}};
    j["steps"] = nlohmann::json::parse(gates::circuit_to_json(circuit));
    return j;
}

// ----------------------------------------------------------------- synth

ordered_json cmd_synth(int controls, Rng& rng, bool emit_circuit) {
    // Random target unitary from Euler angles.
    const gates::EulerDecomposition e{rng.next_double() * pi, rng.next_double() * 4 * pi - 2 * pi,
                                      rng.next_double() * pi, rng.next_double() * 4 * pi - 2 * pi};
    const auto u = gates::euler_reconstruct(e);
    const auto circuit = gates::synthesize_controlled_u(u, controls);
    const auto dense = gates::dense_controlled_u(u, controls);
    const auto got = gates::circuit_unitary(circuit);
    ordered_json j;
    j["circuit"] = "controlled-u";
    j["controls"] = controls;
    j["gate_count"] = circuit.size();
    j["gate_count_formula"] = gates::controlled_u_gate_count(controls);
    j["distance_to_dense"] = gates::phase_aligned_distance(dense, got);
    if (emit_circuit) j["steps"] = nlohmann::json::parse(gates::circuit_to_json(circuit));
    return j;
}

// ------------------------------------------------------------------ rabi

int cmd_rabi(double omega0, double omega1, double omega, double tmax, int points,
             const Options& opt, std::string& out) {
    const hw::RabiField field{omega0, omega1, omega};
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "t,flip_probability\n";
        for (int i = 0; i < points; ++i) {
            const double t = tmax * i / (points - 1);
            csv << t << "," << hw::spin_flip_prob(field, t) << "\n";
        }
        out = csv.str();
        return 0;
    }
    ordered_json j;
    j["model"] = "rabi";
    j["omega0"] = omega0;
    j["omega1"] = omega1;
    j["omega"] = omega;
    j["rabi_frequency"] = field.rabi_frequency();
    j["resonant"] = field.resonant(1e-9);
    j["pi_pulse_flip_probability"] =
        hw::spin_flip_prob(field, pi / field.rabi_frequency());
    out = j.dump(2) + "\n";
    return 0;
}

// --------------------------------------------------------------- iontrap

ordered_json cmd_iontrap(int control, int target) {
    const auto cph = hw::cz_cphase(control, target);
    const auto cnot = hw::cz_cnot(control, target);
    const auto cph_want = gates::standard_gate("CPH", {pi}).matrix;
    const auto cnot_want = gates::standard_gate("CNOT").matrix;
    ordered_json j;
    j["model"] = "ion-trap";
    j["control"] = control;
    j["target"] = target;
    j["cphase_distance"] = gates::phase_aligned_distance(cph.unitary, cph_want);
    j["cphase_leakage"] = cph.max_leakage;
    j["cnot_distance"] = gates::phase_aligned_distance(cnot.unitary, cnot_want);
    j["cnot_leakage"] = cnot.max_leakage;
    return j;
}

// ------------------------------------------------------------------- nmr

ordered_json cmd_nmr(const std::string& sequence) {
    ordered_json j;
    j["model"] = "nmr";
    j["sequence"] = sequence;
    auto dump_states = [](const std::vector<hw::ProductOperatorState>& states) {
        ordered_json lines = ordered_json::array();
        for (const auto& s : states) {
            ordered_json line;
            for (const auto& [term, c] : s.terms(1e-9)) line[term] = c;
            lines.push_back(line);
        }
        return lines;
    };
    if (sequence == "prepare") {
        j["states"] = dump_states(hw::nmr_prepare_pseudo_pure());
    } else if (sequence == "bell") {
        j["states"] = dump_states(hw::nmr_bell_sequence());
    } else if (sequence == "cnot") {
        const auto pulses = hw::nmr_cnot_sequence();
        std::vector<cplx> u{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
        for (const auto& p : pulses) u = gates::mat_mul(hw::nmr_pulse_propagator(p), u, 4);
        j["distance_to_cnot"] =
            gates::phase_aligned_distance(u, gates::standard_gate("CNOT").matrix);
    } else {
        throw std::invalid_argument("nmr: sequence must be prepare, bell or cnot");
    }
    return j;
}

// ------------------------------------------------------------------ kane

ordered_json cmd_kane(double b_tesla, double j_ghz) {
    const auto p = hw::KaneParams::phosphorus_silicon(b_tesla, j_ghz * 1e9);
    ordered_json j;
    j["model"] = "kane";
    j["B_tesla"] = b_tesla;
    j["J_GHz"] = j_ghz;
    j["nuclear_splitting_Hz"] = hw::kane_splitting(p);
    j["omega_j_exact_Hz"] = hw::kane_omega_j_exact(p);
    j["omega_j_perturbative_Hz"] = hw::kane_omega_j_perturbative(p);
    const auto levels = hw::kane_sector_levels(p);
    j["sector_levels_Hz"] = {levels[0], levels[1], levels[2], levels[3]};
    return j;
}

// -------------------------------------------------------------------- tm

ordered_json cmd_tm(const std::string& machine, int n1, int n2, std::uint64_t max_steps) {
    tm::TuringMachine m;
    std::map<long long, int> tape;
    if (machine == "two-state") {
        m = tm::two_state_example();
    } else if (machine == "adder") {
        m = tm::adding_machine();
        tape = tm::unary_addition_tape(n1, n2);
    } else if (machine == "beaver3") {
        m = tm::three_state_beaver();
    } else {
        throw std::invalid_argument("tm: machine must be two-state, adder or beaver3");
    }
    const auto run = tm::run(m, tape, max_steps);
    ordered_json j;
    j["machine"] = machine;
    j["halted"] = run.halted;
    j["steps"] = run.steps;
    j["ones"] = run.ones_written;
    j["table"] = nlohmann::json::parse(tm::machine_to_json(m));
    return j;
}

// ---------------------------------------------------------------- beaver

ordered_json cmd_beaver(int states, bool allow_s3) {
    const auto res = tm::busy_beaver_search(states, allow_s3);
    ordered_json j;
    j["search"] = "busy-beaver";
    j["states"] = states;
    j["sigma"] = res.sigma;
    j["sigma_prime"] = res.sigma_prime;
    j["machines_enumerated"] = res.machines_enumerated;
    j["halting"] = res.halted;
    j["sigma_witness"] = nlohmann::json::parse(tm::machine_to_json(res.sigma_witness));
    j["steps_witness"] = nlohmann::json::parse(tm::machine_to_json(res.steps_witness));
    return j;
}

// ------------------------------------------------------------------- rsa

ordered_json cmd_rsa(std::uint64_t p1, std::uint64_t p2, std::uint64_t d, std::uint64_t block,
                     bool do_break, Rng& rng) {
    const auto key = protocols::rsa_keygen(p1, p2, d);
    const auto cipher = protocols::rsa_encrypt(block, key);
    ordered_json j;
    j["protocol"] = "rsa";
    j["N"] = key.N;
    j["public_c"] = key.c;
    j["private_d"] = key.d;
    j["block"] = block;
    j["cipher"] = cipher;
    j["decrypted"] = protocols::rsa_decrypt(cipher, key);
    if (do_break) {
        const auto broken = protocols::rsa_break(key.N, key.c, cipher, rng);
        j["break"] = {{"p1", broken.p1},
                      {"p2", broken.p2},
                      {"recovered_d", broken.recovered_d},
                      {"decrypted", broken.decrypted_block}};
    }
    return j;
}

int write_output(const Options& opt, const std::string& payload, std::string& out,
                 std::string& err) {
    if (opt.output.empty()) {
        out = payload;
        return 0;
    }
    std::filesystem::path path(opt.output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("QIT_OUTPUT_DIR")) path = std::filesystem::path(dir) / path;
    }
    std::ofstream file(path);
    if (!file) {
        err = "cannot open output file: " + path.string() + "\n";
        return 1;
    }
    file << payload;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
    CLI::App app{"Quantum information toolkit: algorithms, protocols, codes and pulse models"};
    app.require_subcommand(1);

    Options opt;
    std::string payload;

    // shor
    std::uint64_t shor_n = 15, shor_a = 0;
    std::string shor_backend = "statevector";
    auto* shor = app.add_subcommand("shor", "Order finding and integer factoring");
    shor->add_option("--n", shor_n, "odd composite to factor")->required();
    shor->add_option("--a", shor_a, "base (0 picks random bases)");
    shor->add_option("--backend", shor_backend, "statevector or analytic")
        ->check(CLI::IsMember({"statevector", "analytic"}));
    add_common(shor, opt);

    // grover
    int grover_qubits = 10, grover_m = -1;
    std::uint64_t grover_marked = 0;
    double grover_phi = 0.0;
    auto* grover = app.add_subcommand("grover", "Amplitude-amplification search");
    grover->add_option("--qubits", grover_qubits, "register width");
    grover->add_option("--marked", grover_marked, "marked item");
    grover->add_option("--phi", grover_phi, "reflection phase (0 = original choice)");
    grover->add_option("--iterations", grover_m, "kernel applications (-1 = formula value)");
    add_common(grover, opt);

    // simon
    int simon_bits = 3;
    std::uint64_t simon_period = 5;
    auto* simon = app.add_subcommand("simon", "Hidden-period recovery");
    simon->add_option("--bits", simon_bits, "input width");
    simon->add_option("--period", simon_period, "hidden period (nonzero)");
    add_common(simon, opt);

    // dj
    int dj_bits = 3;
    std::string dj_kind = "const0";
    auto* dj = app.add_subcommand("dj", "Constant-vs-balanced discrimination in one query");
    dj->add_option("--bits", dj_bits, "input width");
    dj->add_option("--kind", dj_kind, "const0, const1, lsb or parity");
    add_common(dj, opt);

    // teleport
    double tp_theta = 1.0471975511965976, tp_phi = 0.5;
    auto* teleport = app.add_subcommand("teleport", "One-qubit teleportation over a shared pair");
    teleport->add_option("--theta", tp_theta, "Bloch polar angle of the input");
    teleport->add_option("--phi", tp_phi, "Bloch azimuth of the input");
    add_common(teleport, opt);

    // dense
    int dense_message = 2;
    auto* dense = app.add_subcommand("dense", "Two classical bits over one qubit");
    dense->add_option("--message", dense_message, "message in 0..3");
    add_common(dense, opt);

    // bb84
    int bb84_n = 1000, bb84_check = 0;
    bool bb84_eve = false;
    double bb84_loss = 0.0;
    auto* bb84 = app.add_subcommand("bb84", "Four-state quantum key distribution");
    bb84->add_option("--n", bb84_n, "photons");
    bb84->add_flag("--eve", bb84_eve, "enable an intercept-resend eavesdropper");
    bb84->add_option("--loss", bb84_loss, "per-photon detection failure probability");
    bb84->add_option("--check", bb84_check, "publicly compare this many sifted bits");
    add_common(bb84, opt);

    // bbm92
    int bbm92_n = 1000;
    auto* bbm92 = app.add_subcommand("bbm92", "Singlet-based key distribution");
    bbm92->add_option("--n", bbm92_n, "pairs");
    add_common(bbm92, opt);

    // distill
    double distill_f0 = 0.75, distill_target = 0.99;
    std::uint64_t distill_pairs = 1 << 20;
    std::string distill_mode = "analytic";
    auto* distill = app.add_subcommand("distill", "Iterated two-pair purification");
    distill->add_option("--f0", distill_f0, "input fidelity (must exceed 1/2)");
    distill->add_option("--target", distill_target, "stop once fidelity reaches this");
    distill->add_option("--mode", distill_mode, "analytic or simulate")
        ->check(CLI::IsMember({"analytic", "simulate"}));
    distill->add_option("--pairs", distill_pairs, "initial pair supply");
    add_common(distill, opt, true);

    // steane
    std::string steane_error = "X3";
    double steane_theta = 0.9;
    auto* steane = app.add_subcommand("steane", "Seven-qubit code error correction");
    steane->add_option("--error", steane_error, "single Pauli error, e.g. X3, Z5, Y1, I");
    steane->add_option("--theta", steane_theta, "logical state angle");
    add_common(steane, opt);

    // hamming
    std::string hamming_word = "0110001";
    auto* hamming = app.add_subcommand("hamming", "Single-error decoding of the [7,4] code");
    hamming->add_option("--word", hamming_word, "received 7-bit word");
    add_common(hamming, opt);

    // bounds
    int bounds_q = 2, bounds_points = 101;
    auto* bounds = app.add_subcommand("bounds", "Asymptotic rate-vs-distance bound curves");
    bounds->add_option("--q", bounds_q, "field size");
    bounds->add_option("--points", bounds_points, "grid resolution");
    add_common(bounds, opt);

    // qft
    int qft_k = 3, qft_d = 2;
    auto* qft = app.add_subcommand("qft", "Fourier-transform circuit construction");
    qft->add_option("--k", qft_k, "register width");
    qft->add_option("--d", qft_d, "local dimension");
    add_common(qft, opt);

    // synth
    int synth_controls = 2;
    bool synth_emit = false;
    auto* synth = app.add_subcommand("synth", "Controlled-unitary synthesis over 1-qubit + CNOT");
    synth->add_option("--controls", synth_controls, "number of control qubits");
    synth->add_flag("--emit-circuit", synth_emit, "include the full gate list");
    add_common(synth, opt);

    // rabi
    double rabi_w0 = 1.0, rabi_w1 = 0.2, rabi_w = 1.0, rabi_tmax = 50.0;
    int rabi_points = 201;
    auto* rabi = app.add_subcommand("rabi", "Rotating-field spin dynamics");
    rabi->add_option("--omega0", rabi_w0, "static-field frequency");
    rabi->add_option("--omega1", rabi_w1, "drive amplitude frequency");
    rabi->add_option("--omega", rabi_w, "drive frequency");
    rabi->add_option("--tmax", rabi_tmax, "trace end time");
    rabi->add_option("--points", rabi_points, "trace resolution");
    add_common(rabi, opt, true);

    // iontrap
    int ion_control = 0, ion_target = 1;
    auto* iontrap = app.add_subcommand("iontrap", "Pulse-built conditional gates on trapped ions");
    iontrap->add_option("--control", ion_control, "control ion");
    iontrap->add_option("--target", ion_target, "target ion");
    add_common(iontrap, opt);

    // nmr
    std::string nmr_sequence = "prepare";
    auto* nmr = app.add_subcommand("nmr", "Product-operator pulse sequences");
    nmr->add_option("--sequence", nmr_sequence, "prepare, bell or cnot")
        ->check(CLI::IsMember({"prepare", "bell", "cnot"}));
    add_common(nmr, opt);

    // kane
    double kane_b = 2.0, kane_j = 30.0;
    auto* kane = app.add_subcommand("kane", "Donor-pair energy levels and splittings");
    kane->add_option("--b", kane_b, "static field in tesla");
    kane->add_option("--j-ghz", kane_j, "exchange coupling in GHz");
    add_common(kane, opt);

    // tm
    std::string tm_machine = "adder";
    int tm_n1 = 2, tm_n2 = 2;
    std::uint64_t tm_steps = 1000;
    auto* tmc = app.add_subcommand("tm", "Run a fixture machine");
    tmc->add_option("--machine", tm_machine, "two-state, adder or beaver3");
    tmc->add_option("--n1", tm_n1, "first addend (adder)");
    tmc->add_option("--n2", tm_n2, "second addend (adder)");
    tmc->add_option("--max-steps", tm_steps, "step cap");
    add_common(tmc, opt);

    // beaver
    int beaver_states = 2;
    bool beaver_allow = false;
    auto* beaver = app.add_subcommand("beaver", "Exhaustive busy-beaver search");
    beaver->add_option("--states", beaver_states, "machine states (1..3)");
    beaver->add_flag("--allow-s3", beaver_allow, "confirm the 16.7M-machine S=3 run");
    add_common(beaver, opt);

    // rsa
    std::uint64_t rsa_p1 = 139, rsa_p2 = 157, rsa_d = 5, rsa_block = 12345;
    bool rsa_do_break = false;
    auto* rsa = app.add_subcommand("rsa", "Toy public-key cipher and its order-finding break");
    rsa->add_option("--p1", rsa_p1, "first prime");
    rsa->add_option("--p2", rsa_p2, "second prime");
    rsa->add_option("--d", rsa_d, "private exponent");
    rsa->add_option("--block", rsa_block, "challenge block");
    rsa->add_flag("--break", rsa_do_break, "factor N and recover the private key");
    add_common(rsa, opt);

    std::vector<const char*> argv;
    argv.push_back("qit");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        out = help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        err = std::string(e.what()) + "\n";
        return 2;
    }

    try {
        Rng rng(RngSeed{opt.seed});
        if (shor->parsed()) payload = cmd_shor(shor_n, shor_a, shor_backend, rng).dump(2) + "\n";
        if (grover->parsed())
            payload = cmd_grover(grover_qubits, grover_marked, grover_phi, grover_m, rng).dump(2) + "\n";
        if (simon->parsed()) payload = cmd_simon(simon_bits, simon_period, rng).dump(2) + "\n";
        if (dj->parsed()) payload = cmd_dj(dj_bits, dj_kind, rng).dump(2) + "\n";
        if (teleport->parsed()) payload = cmd_teleport(tp_theta, tp_phi, rng).dump(2) + "\n";
        if (dense->parsed()) payload = cmd_dense(dense_message, rng).dump(2) + "\n";
        if (bb84->parsed())
            payload = cmd_bb84(bb84_n, bb84_eve, bb84_loss, bb84_check, rng).dump(2) + "\n";
        if (bbm92->parsed()) payload = cmd_bbm92(bbm92_n, rng).dump(2) + "\n";
        if (distill->parsed()) {
            std::string body;
            const int rc =
                cmd_distill(distill_f0, distill_target, distill_mode, distill_pairs, opt, rng, body);
            if (rc != 0) return rc;
            payload = body;
        }
        if (steane->parsed()) payload = cmd_steane(steane_error, steane_theta, rng).dump(2) + "\n";
        if (hamming->parsed()) payload = cmd_hamming(hamming_word).dump(2) + "\n";
        if (bounds->parsed()) {
            std::string body;
            const int rc = cmd_bounds(bounds_q, bounds_points, opt, body);
            if (rc != 0) return rc;
            payload = body;
        }
        if (qft->parsed()) payload = cmd_qft(qft_k, qft_d).dump(2) + "\n";
        if (synth->parsed()) payload = cmd_synth(synth_controls, rng, synth_emit).dump(2) + "\n";
        if (rabi->parsed()) {
            std::string body;
            const int rc = cmd_rabi(rabi_w0, rabi_w1, rabi_w, rabi_tmax, rabi_points, opt, body);
            if (rc != 0) return rc;
            payload = body;
        }
        if (iontrap->parsed()) payload = cmd_iontrap(ion_control, ion_target).dump(2) + "\n";
        if (nmr->parsed()) payload = cmd_nmr(nmr_sequence).dump(2) + "\n";
        if (kane->parsed()) payload = cmd_kane(kane_b, kane_j).dump(2) + "\n";
        if (tmc->parsed()) payload = cmd_tm(tm_machine, tm_n1, tm_n2, tm_steps).dump(2) + "\n";
        if (beaver->parsed()) payload = cmd_beaver(beaver_states, beaver_allow).dump(2) + "\n";
        if (rsa->parsed())
            payload = cmd_rsa(rsa_p1, rsa_p2, rsa_d, rsa_block, rsa_do_break, rng).dump(2) + "\n";
    } catch (const std::exception& e) {
        err = std::string("error: ") + e.what() + "\n";
        return 1;
    }

    return write_output(opt, payload, out, err);
}

int main_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string out, err;
    const int rc = run_cli(args, out, err);
    if (!out.empty()) std::cout << out;
    if (!err.empty()) std::cerr << err;
    return rc;
}

}  // namespace cli
}  // namespace qit
