#include "dulac/linalg.hpp"

#include <stdexcept>

namespace dulac::linalg {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && sgn(m[sel][col]) == 0)
            ++sel;
        if (sel == m.size())
            continue;
        std::swap(m[sel], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row])
            x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c)
                m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(Matrix m)
{
    if (m.empty())
        return 0;
    return rref(m, m.front().size()).size();
}

std::optional<std::vector<Rational>> solve_unique(const Matrix& a, const std::vector<Rational>& b)
{
    std::size_t ncols = a.empty() ? 0 : a.front().size();
    Matrix aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r)
        aug[r].push_back(b.at(r));
    auto pivots = rref(aug, ncols + 1);
    if (!pivots.empty() && pivots.back() == ncols)
        return std::nullopt;
    if (pivots.size() != ncols)
        throw std::invalid_argument("solve_unique: matrix lacks full column rank");
    std::vector<Rational> x(ncols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug[r][ncols];
    return x;
}

std::optional<std::vector<Rational>> null_vector(const Matrix& a)
{
    if (a.empty())
        return std::nullopt;
    std::size_t ncols = a.front().size();
    Matrix m = a;
    auto pivots = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        return v;
    }
    return std::nullopt;
}

std::vector<mpz_class> primitive_integer(const std::vector<Rational>& v)
{
    mpz_class l = 1;
    for (const auto& q : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (const auto& q : v) {
        mpz_class z = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        out.push_back(z);
    }
    if (g == 0)
        return out;
    int sign = 0;
    for (const auto& z : out) {
        if (z != 0) {
            sign = sgn(z);
            break;
        }
    }
    for (auto& z : out)
        z = z / g * sign;
    return out;
}

} // namespace dulac::linalg
