#include "cse/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace cse {
namespace {

// Plain Thomas sweep on a non-cyclic system; corner entries are ignored.
template<class Scalar>
bool thomas(std::span<Scalar const> lower,
            std::span<Scalar const> diag,
            std::span<Scalar const> upper,
            std::span<Scalar const> rhs,
            std::span<Scalar> x,
            std::vector<Scalar>& work)
{
    auto const n = diag.size();
    work.resize(n);
    Scalar pivot = diag[0];
    if (pivot == Scalar{0})
        return false;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i)
    {
        work[i] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i] * work[i];
        if (pivot == Scalar{0})
            return false;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i > 0; --i)
        x[i - 1] -= work[i] * x[i];
    return true;
}

}  // namespace

//---------------------------------------------------------------------------//
bool solve_cyclic_tridiagonal(std::span<Complex const> lower,
                              std::span<Complex const> diag,
                              std::span<Complex const> upper,
                              std::span<Complex const> rhs,
                              std::span<Complex> x)
{
    auto const n = diag.size();
    Complex const alpha = upper[n - 1];  // bottom-left corner
    Complex const beta = lower[0];       // top-right corner
    Complex const gamma = diag[0] == Complex{0} ? Complex{1} : -diag[0];

    std::vector<Complex> mdiag(diag.begin(), diag.end());
    mdiag[0] -= gamma;
    mdiag[n - 1] -= alpha * beta / gamma;

    std::vector<Complex> work;
    if (!thomas<Complex>(lower, mdiag, upper, rhs, x, work))
        return false;

    std::vector<Complex> u(n, Complex{0});
    u[0] = gamma;
    u[n - 1] = alpha;
    std::vector<Complex> z(n);
    if (!thomas<Complex>(lower, mdiag, upper, u, z, work))
        return false;

    Complex const denom = Complex{1} + z[0] + beta * z[n - 1] / gamma;
    if (denom == Complex{0})
        return false;
    Complex const fact = (x[0] + beta * x[n - 1] / gamma) / denom;
    for (std::size_t i = 0; i < n; ++i)
        x[i] -= fact * z[i];

    return std::all_of(x.begin(), x.end(), [](Complex v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

double cyclic_tridiagonal_residual(std::span<Complex const> lower,
                                   std::span<Complex const> diag,
                                   std::span<Complex const> upper,
                                   std::span<Complex const> rhs,
                                   std::span<Complex const> x)
{
    auto const n = diag.size();
    double res = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        Complex const ax = lower[i] * x[(i + n - 1) % n] + diag[i] * x[i]
                           + upper[i] * x[(i + 1) % n];
        res = std::max(res, std::abs(ax - rhs[i]));
    }
    return res;
}

//---------------------------------------------------------------------------//
namespace {

using Block2x2Cols = Eigen::Matrix<double, 2, 2>;

// Block Thomas sweep for a right-hand side with `Cols` columns per block row.
template<class RhsBlock>
bool block_thomas(std::vector<Block2> const& lower,
                  std::vector<Block2> const& diag,
                  std::vector<Block2> const& upper,
                  std::vector<RhsBlock> const& rhs,
                  std::vector<RhsBlock>& x)
{
    auto const n = diag.size();
    std::vector<Block2> cprime(n);
    x.resize(n);

    Eigen::FullPivLU<Block2> lu(diag[0]);
    if (!lu.isInvertible())
        return false;
    cprime[0] = lu.solve(upper[0]);
    x[0] = lu.solve(rhs[0]);
    for (std::size_t i = 1; i < n; ++i)
    {
        Block2 const pivot = diag[i] - lower[i] * cprime[i - 1];
        lu.compute(pivot);
        if (!lu.isInvertible())
            return false;
        cprime[i] = lu.solve(upper[i]);
        x[i] = lu.solve(rhs[i] - lower[i] * x[i - 1]);
    }
    for (std::size_t i = n - 1; i > 0; --i)
        x[i - 1] -= cprime[i - 1] * x[i];
    return true;
}

}  // namespace

bool solve_cyclic_block_tridiagonal(CyclicBlockSystem const& sys,
                                    std::span<Vec2 const> rhs,
                                    std::span<Vec2> x)
{
    auto const n = sys.diag.size();
    Block2 const alpha = sys.upper[n - 1];  // bottom-left corner block
    Block2 const beta = sys.lower[0];       // top-right corner block
    Block2 gamma = -sys.diag[0];
    Eigen::FullPivLU<Block2> glu(gamma);
    if (!glu.isInvertible())
    {
        gamma = Block2::Identity();
        glu.compute(gamma);
    }
    Block2 const ginv_beta = glu.solve(beta);

    std::vector<Block2> mdiag = sys.diag;
    mdiag[0] -= gamma;
    mdiag[n - 1] -= alpha * ginv_beta;

    std::vector<Vec2> r(rhs.begin(), rhs.end());
    std::vector<Vec2> y;
    if (!block_thomas(sys.lower, mdiag, sys.upper, r, y))
        return false;

    std::vector<Block2x2Cols> u(n, Block2x2Cols::Zero());
    u[0] = gamma;
    u[n - 1] = alpha;
    std::vector<Block2x2Cols> z;
    if (!block_thomas(sys.lower, mdiag, sys.upper, u, z))
        return false;

    // x = y - Z (I + V^T Z)^{-1} V^T y, V^T w = w_0 + γ^{-1} β w_{n-1}
    Block2 const small = Block2::Identity() + z[0] + ginv_beta * z[n - 1];
    Eigen::FullPivLU<Block2> slu(small);
    if (!slu.isInvertible())
        return false;
    Vec2 const coef = slu.solve(y[0] + ginv_beta * y[n - 1]);
    for (std::size_t i = 0; i < n; ++i)
    {
        x[i] = y[i] - z[i] * coef;
        if (!x[i].allFinite())
            return false;
    }
    return true;
}

double cyclic_block_residual(CyclicBlockSystem const& sys,
                             std::span<Vec2 const> rhs,
                             std::span<Vec2 const> x)
{
    auto const n = sys.diag.size();
    double res = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec2 const ax = sys.lower[i] * x[(i + n - 1) % n] + sys.diag[i] * x[i]
                        + sys.upper[i] * x[(i + 1) % n];
        res = std::max(res, (ax - rhs[i]).cwiseAbs().maxCoeff());
    }
    return res;
}

}  // namespace cse
