// Timings for the gate-application kernels: serial reference vs OpenMP,
// single- and two-qubit gates across register sizes. The two kernels must
// produce bitwise identical amplitudes; the benchmark re-checks that on
// every size it touches.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qit/gates.hpp"
#include "qit/rng.hpp"
#include "qit/state.hpp"

using namespace qit;

namespace {

StateVector random_state(int qubits, Rng& rng) {
    std::vector<cplx> amps(1ull << qubits);
    for (auto& a : amps) a = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
    StateVector s(2, qubits, std::move(amps));
    s.normalize();
    return s;
}

template <typename F>
double time_ms(F&& body, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (OpenMP disabled)\n";
#endif
    std::cout << std::setw(8) << "qubits" << std::setw(8) << "gate" << std::setw(14)
              << "serial ms" << std::setw(14) << "parallel ms" << std::setw(10) << "speedup"
              << std::setw(10) << "bitwise\n";

    Rng rng(RngSeed{20240229});
    const auto h = gates::standard_gate("H");
    const auto sswap = gates::standard_gate("SQRT_SWAP");

    for (int qubits = 12; qubits <= 22; qubits += 2) {
        const StateVector base = random_state(qubits, rng);
        const int reps = qubits <= 16 ? 20 : 5;

        struct Case {
            const char* name;
            const std::vector<cplx>* matrix;
            std::vector<int> targets;
        };
        const Case cases[] = {
            {"H", &h.matrix, {qubits / 2}},
            {"sqSWAP", &sswap.matrix, {1, qubits - 2}},
        };

        for (const Case& c : cases) {
            StateVector serial = base, parallel = base;
            const double t_serial = time_ms(
                [&] { apply_unitary_serial(2, serial.amplitudes(), *c.matrix, c.targets); }, reps);
            const double t_parallel = time_ms(
                [&] { apply_unitary_parallel(2, parallel.amplitudes(), *c.matrix, c.targets); },
                reps);
            const bool same = std::memcmp(serial.amplitudes().data(), parallel.amplitudes().data(),
                                          serial.dim() * sizeof(cplx)) == 0;
            std::cout << std::setw(8) << qubits << std::setw(8) << c.name << std::setw(14)
                      << std::fixed << std::setprecision(3) << t_serial << std::setw(14)
                      << t_parallel << std::setw(10) << std::setprecision(2)
                      << t_serial / t_parallel << std::setw(9) << (same ? "yes" : "NO") << "\n";
            if (!same) return 1;
        }
    }
    return 0;
}
