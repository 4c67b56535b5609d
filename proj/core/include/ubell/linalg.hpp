#pragma once

#include <array>
#include <complex>
#include <vector>

// Fixed-size complex linear algebra for 2x2 and 4x4 Hermitian operators.
// Everything here is a pure value type; no operation mutates its inputs.

namespace ubell {

using Complex = std::complex<double>;

// Bloch vector / measurement direction.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    bool is_unit(double tol = 1e-12) const;
    Vec3 normalized() const;  // throws on the zero vector

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
};

// Dense complex square matrix, dim restricted to 2 or 4.
class SquareOp {
public:
    explicit SquareOp(int dim);
    static SquareOp identity(int dim);

    int dim() const { return dim_; }
    Complex& at(int i, int j) { return e_[static_cast<std::size_t>(i * dim_ + j)]; }
    const Complex& at(int i, int j) const { return e_[static_cast<std::size_t>(i * dim_ + j)]; }

    Complex trace() const;
    SquareOp adjoint() const;
    // max entrywise |A(i,j) - conj(A(j,i))|
    double hermiticity_defect() const;

    SquareOp operator+(const SquareOp& o) const;
    SquareOp operator-(const SquareOp& o) const;
    SquareOp operator*(const SquareOp& o) const;
    friend SquareOp operator*(Complex s, const SquareOp& m);
    friend SquareOp operator*(double s, const SquareOp& m);

    // max entrywise absolute difference
    double max_abs_diff(const SquareOp& o) const;

private:
    int dim_;
    std::array<Complex, 16> e_{};  // row-major, first dim_*dim_ entries used
};

// Hermitian matrix; the constructor symmetrizes (H + H^dag)/2 when the
// defect is below tol and rejects otherwise.
class HermitianOperator {
public:
    explicit HermitianOperator(const SquareOp& m, double tol = 1e-12);
    static HermitianOperator identity(int dim);

    const SquareOp& op() const { return m_; }
    int dim() const { return m_.dim(); }
    double real_trace() const { return m_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    friend HermitianOperator operator*(double s, const HermitianOperator& h);

private:
    SquareOp m_;
};

enum class PauliAxis { X, Y, Z };

HermitianOperator pauli(PauliAxis axis);

// v_x sigma_x + v_y sigma_y + v_z sigma_z; eigenvalues are +/-|v|.
HermitianOperator bloch_operator(const Vec3& v);

// Kronecker product of two 2x2 blocks; entry((2i+k),(2j+l)) = a(i,j) * b(k,l).
// The first factor owns the outer block index everywhere in this library.
SquareOp tensor(const SquareOp& a, const SquareOp& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// Ascending eigenvalues. dim 2 uses the closed form, dim 4 cyclic Jacobi
// sweeps until the off-diagonal Frobenius norm drops below 1e-13.
// Throws if 100 sweeps do not converge.
std::vector<double> eigvals_hermitian(const HermitianOperator& h);

double min_eigenvalue(const HermitianOperator& h);
bool is_psd(const HermitianOperator& h, double tol = 1e-10);

// Determinant via partial-pivot LU; used by tests as an eigenvalue cross-check.
Complex det(const SquareOp& m);

}  // namespace ubell
