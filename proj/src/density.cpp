#include "qit/density.hpp"

#include <numeric>
#include <stdexcept>

namespace qit {

namespace {

void check_dims(const std::vector<int>& dims, int total) {
    long long prod = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("factor dimensions must be positive");
        prod *= d;
    }
    if (prod != total) throw std::invalid_argument("factor dimensions do not multiply to dim");
}

// Decompose a flat index into per-subsystem digits, dims[0] most significant.
void unpack(std::uint64_t index, const std::vector<int>& dims, std::vector<int>& digits) {
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % dims[i]);
        index /= dims[i];
    }
}

std::uint64_t pack(const std::vector<int>& digits, const std::vector<int>& dims) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
    return idx;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix must be square");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    const auto n = static_cast<Eigen::Index>(psi.dim());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityMatrix::is_valid(double tol) const {
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -kPsdTol;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + dim());
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    check_dims(dims, rho.dim());
    for (int k : keep)
        if (k < 0 || k >= static_cast<int>(dims.size()))
            throw std::invalid_argument("keep index out of range");

    std::vector<int> kept_dims;
    for (int k : keep) kept_dims.push_back(dims[k]);
    const long long out_dim =
        std::accumulate(kept_dims.begin(), kept_dims.end(), 1LL, std::multiplies<>());

    std::vector<bool> is_kept(dims.size(), false);
    for (int k : keep) is_kept[k] = true;

    Matrix out = Matrix::Zero(out_dim, out_dim);
    std::vector<int> row(dims.size()), col(dims.size());
    std::vector<int> row_kept(keep.size()), col_kept(keep.size());
    const std::uint64_t total = rho.dim();
    for (std::uint64_t r = 0; r < total; ++r) {
        unpack(r, dims, row);
        for (std::uint64_t c = 0; c < total; ++c) {
            unpack(c, dims, col);
            bool traced_match = true;
            for (std::size_t s = 0; s < dims.size(); ++s)
                if (!is_kept[s] && row[s] != col[s]) {
                    traced_match = false;
                    break;
                }
            if (!traced_match) continue;
            for (std::size_t i = 0; i < keep.size(); ++i) {
                row_kept[i] = row[keep[i]];
                col_kept[i] = col[keep[i]];
            }
            out(pack(row_kept, kept_dims), pack(col_kept, kept_dims)) += rho.matrix()(r, c);
        }
    }
    return DensityMatrix(std::move(out));
}

double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi) {
    if (static_cast<std::uint64_t>(rho.dim()) != psi.dim())
        throw std::invalid_argument("fidelity_to_pure: dimension mismatch");
    cplx acc(0, 0);
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            acc += std::conj(psi[i]) * rho.matrix()(i, j) * psi[j];
    return acc.real();
}

Matrix partial_transpose(const Matrix& rho, const std::vector<int>& dims, int subsystem) {
    check_dims(dims, static_cast<int>(rho.rows()));
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
        throw std::invalid_argument("partial_transpose: subsystem out of range");

    Matrix out(rho.rows(), rho.cols());
    std::vector<int> row(dims.size()), col(dims.size());
    const std::uint64_t total = rho.rows();
    for (std::uint64_t r = 0; r < total; ++r) {
        unpack(r, dims, row);
        for (std::uint64_t c = 0; c < total; ++c) {
            unpack(c, dims, col);
            std::vector<int> tr = row, tc = col;
            std::swap(tr[subsystem], tc[subsystem]);
            out(pack(tr, dims), pack(tc, dims)) = rho(r, c);
        }
    }
    return out;
}

}  // namespace qit
