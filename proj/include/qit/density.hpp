#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qit/state.hpp"

namespace qit {

using Matrix = Eigen::MatrixXcd;

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix m);

    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

    /// Hermitian within 1e-10, trace 1 within 1e-10, min eigenvalue >= -1e-8.
    bool is_valid(double tol = kAlgebraTol) const;

    /// Ascending real eigenvalues (Hermitian part).
    std::vector<double> eigenvalues() const;

  private:
    Matrix m_;
};

/// Trace out every subsystem not listed in `keep`. `dims` are the factor
/// dimensions in tensor order (dims[0] = most significant, matching
/// tensor(a, b) putting `a` high). `keep` lists subsystem indices to retain,
/// in their original order; an empty `keep` yields the 1x1 matrix [tr rho].
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// <psi| rho |psi>
double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi);

/// Transpose the indices of one subsystem. Same dims convention as
/// partial_trace. The result is Hermitian but not necessarily positive.
Matrix partial_transpose(const Matrix& rho, const std::vector<int>& dims, int subsystem);

}  // namespace qit
