#include "ubell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ubell {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool valid_dim(int d) { return d == 2 || d == 4; }

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool Vec3::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Vec3 Vec3::normalized() const {
    const double n = norm();
    require(n > 0.0, "cannot normalize the zero vector");
    return {x / n, y / n, z / n};
}

SquareOp::SquareOp(int dim) : dim_(dim) {
    require(valid_dim(dim), "SquareOp dim must be 2 or 4");
}

SquareOp SquareOp::identity(int dim) {
    SquareOp m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Complex SquareOp::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

SquareOp SquareOp::adjoint() const {
    SquareOp r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

double SquareOp::hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

SquareOp SquareOp::operator+(const SquareOp& o) const {
    require(dim_ == o.dim_, "dimension mismatch");
    SquareOp r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) r.e_[static_cast<std::size_t>(i)] =
        e_[static_cast<std::size_t>(i)] + o.e_[static_cast<std::size_t>(i)];
    return r;
}

SquareOp SquareOp::operator-(const SquareOp& o) const {
    require(dim_ == o.dim_, "dimension mismatch");
    SquareOp r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) r.e_[static_cast<std::size_t>(i)] =
        e_[static_cast<std::size_t>(i)] - o.e_[static_cast<std::size_t>(i)];
    return r;
}

SquareOp SquareOp::operator*(const SquareOp& o) const {
    require(dim_ == o.dim_, "dimension mismatch");
    SquareOp r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const Complex aik = at(i, k);
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

SquareOp operator*(Complex s, const SquareOp& m) {
    SquareOp r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r.at(i, j) = s * m.at(i, j);
    return r;
}

SquareOp operator*(double s, const SquareOp& m) { return Complex(s, 0.0) * m; }

double SquareOp::max_abs_diff(const SquareOp& o) const {
    require(dim_ == o.dim_, "dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) worst = std::max(worst, std::abs(at(i, j) - o.at(i, j)));
    return worst;
}

HermitianOperator::HermitianOperator(const SquareOp& m, double tol) : m_(m.dim()) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            const Complex v = m.at(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("non-finite matrix entry");
        }
    if (m.hermiticity_defect() > tol)
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    // absorb rounding drift
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            m_.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(SquareOp::identity(dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    return HermitianOperator(m_ - o.m_);
}

HermitianOperator operator*(double s, const HermitianOperator& h) {
    return HermitianOperator(s * h.op());
}

HermitianOperator pauli(PauliAxis axis) {
    SquareOp m(2);
    switch (axis) {
        case PauliAxis::X:
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case PauliAxis::Y:
            m.at(0, 1) = Complex(0.0, -1.0);
            m.at(1, 0) = Complex(0.0, 1.0);
            break;
        case PauliAxis::Z:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
    }
    return HermitianOperator(m);
}

HermitianOperator bloch_operator(const Vec3& v) {
    SquareOp m(2);
    m.at(0, 0) = v.z;
    m.at(1, 1) = -v.z;
    m.at(0, 1) = Complex(v.x, -v.y);
    m.at(1, 0) = Complex(v.x, v.y);
    return HermitianOperator(m);
}

SquareOp tensor(const SquareOp& a, const SquareOp& b) {
    require(a.dim() == 2 && b.dim() == 2, "tensor expects two 2x2 factors");
    SquareOp r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
    return r;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor(a.op(), b.op()));
}

namespace {

std::vector<double> eigvals_2x2(const SquareOp& m) {
    const double a = m.at(0, 0).real();
    const double d = m.at(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(m.at(0, 1)));
    return {mean - r, mean + r};
}

double offdiag_frobenius(const SquareOp& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p,q). The unitary is a phase that
// makes m(p,q) real followed by the classic Givens rotation.
void jacobi_rotate(SquareOp& m, int p, int q) {
    const Complex apq = m.at(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const Complex phase = apq / mag;
    const double app = m.at(p, p).real();
    const double aqq = m.at(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    SquareOp g = SquareOp::identity(m.dim());
    g.at(p, p) = c;
    g.at(p, q) = s;
    g.at(q, p) = -s * std::conj(phase);
    g.at(q, q) = c * std::conj(phase);

    m = g.adjoint() * m * g;
}

std::vector<double> eigvals_jacobi(SquareOp m) {
    constexpr double kTarget = 1e-13;
    constexpr int kMaxSweeps = 100;
    const int n = m.dim();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(m) < kTarget) {
            std::vector<double> vals;
            vals.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) vals.push_back(m.at(i, i).real());
            std::sort(vals.begin(), vals.end());
            return vals;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(m, p, q);
    }
    throw std::runtime_error("Jacobi eigensolver did not converge in 100 sweeps");
}

}  // namespace

std::vector<double> eigvals_hermitian(const HermitianOperator& h) {
    if (h.dim() == 2) return eigvals_2x2(h.op());
    return eigvals_jacobi(h.op());
}

double min_eigenvalue(const HermitianOperator& h) {
    return eigvals_hermitian(h).front();
}

bool is_psd(const HermitianOperator& h, double tol) {
    return min_eigenvalue(h) >= -tol;
}

Complex det(const SquareOp& m) {
    const int n = m.dim();
    SquareOp lu = m;
    Complex d = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lu.at(r, col)) > std::abs(lu.at(pivot, col))) pivot = r;
        if (std::abs(lu.at(pivot, col)) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(lu.at(pivot, j), lu.at(col, j));
            d = -d;
        }
        d *= lu.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const Complex f = lu.at(r, col) / lu.at(col, col);
            for (int j = col; j < n; ++j) lu.at(r, j) -= f * lu.at(col, j);
        }
    }
    return d;
}

}  // namespace ubell
