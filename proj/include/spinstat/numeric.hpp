#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace spinstat {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vector3 = Eigen::Vector3d;

inline double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

// exp(factor * H) for Hermitian H, via unitary diagonalization.
inline Matrix hermitian_exp(const Matrix& h, std::complex<double> factor) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases(k) = std::exp(factor * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

// Orthonormal basis of the right null space of A; singular values below
// rel_tol * s_max count as zero.
inline Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? rel_tol * std::max(sv(0), 1e-300) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

// Deterministic momentum samples with |p| log-uniform in [p_min, p_max].
inline std::vector<Vector3> sample_momenta(int count, std::uint64_t seed,
                                           double p_min = 0.1,
                                           double p_max = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vector3> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Vector3 dir(g(rng), g(rng), g(rng));
        double n = dir.norm();
        if (n < 1e-6) continue;
        double mag = p_min * std::pow(p_max / p_min, u(rng));
        out.push_back(dir / n * mag);
    }
    return out;
}

}  // namespace spinstat
