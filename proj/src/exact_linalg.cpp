#include "psep/exact_linalg.hpp"

#include "psep/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace psep {

namespace {

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<int> rref(RationalMatrix& m) {
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0)
            continue;
        m.swap_rows(pivot, row);
        m.scale_row(row, Rational(1) / m.at(row, col));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero())
                continue;
            m.add_scaled_row(i, row, -m.at(i, col));
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

// Scales to coprime integers, first nonzero entry positive.
void normalize_kernel_vector(std::vector<Rational>& v) {
    BigInt lcm_den = 1;
    for (const Rational& r : v)
        lcm_den = boost::multiprecision::lcm(lcm_den, r.denominator());
    BigInt gcd_num = 0;
    std::vector<BigInt> ints(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        Rational scaled = v[j] * Rational(lcm_den);
        ints[j] = scaled.numerator(); // denominator is 1 now
        gcd_num = boost::multiprecision::gcd(gcd_num, ints[j]);
    }
    if (gcd_num == 0)
        return; // zero vector, cannot occur for a basis vector
    int lead_sign = 0;
    for (const BigInt& x : ints)
        if (x != 0) { lead_sign = x > 0 ? 1 : -1; break; }
    if (lead_sign < 0)
        gcd_num = -gcd_num;
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = Rational(ints[j] / gcd_num);
}

} // namespace

KernelBasis kernel_basis(const CoefficientMatrix& A) {
    const int n = A.dim();
    RationalMatrix m = A.matrix();
    std::vector<int> pivot_cols = rref(m);

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_cols)
        is_pivot[c] = true;

    KernelBasis basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(n);
        v[free] = Rational(1);
        for (std::size_t p = 0; p < pivot_cols.size(); ++p)
            v[pivot_cols[p]] = -m.at(static_cast<int>(p), free);
        normalize_kernel_vector(v);
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

int rank(const CoefficientMatrix& A) {
    RationalMatrix m = A.matrix();
    return static_cast<int>(rref(m).size());
}

CongruenceResult skew_canonical_congruence(const CoefficientMatrix& A) {
    const int n = A.dim();
    RationalMatrix m = A.matrix();
    RationalMatrix p = RationalMatrix::identity(n);

    int t = 0;
    while (t + 1 < n) {
        // First nonzero entry of the trailing block, row-major. Skew-symmetry
        // puts it strictly above the diagonal.
        int pi = -1, pj = -1;
        for (int i = t; i < n && pi < 0; ++i)
            for (int j = t; j < n; ++j)
                if (!m.at(i, j).is_zero()) { pi = i; pj = j; break; }
        if (pi < 0)
            break; // trailing block is zero: done

        if (pi != t) {
            m.swap_rows(pi, t);
            m.swap_cols(pi, t);
            p.swap_rows(pi, t);
        }
        if (pj != t + 1) {
            m.swap_rows(pj, t + 1);
            m.swap_cols(pj, t + 1);
            p.swap_rows(pj, t + 1);
        }

        Rational s = Rational(1) / m.at(t, t + 1);
        m.scale_row(t, s);
        m.scale_col(t, s);
        p.scale_row(t, s);

        for (int k = t + 2; k < n; ++k) {
            Rational a = m.at(k, t);
            Rational b = m.at(k, t + 1);
            if (a.is_zero() && b.is_zero())
                continue;
            m.add_scaled_row(k, t, -b);
            m.add_scaled_row(k, t + 1, a);
            m.add_scaled_col(k, t, -b);
            m.add_scaled_col(k, t + 1, a);
            p.add_scaled_row(k, t, -b);
            p.add_scaled_row(k, t + 1, a);
        }
        t += 2;
    }

    CongruenceResult result;
    result.rank = t;
    result.canonical = RationalMatrix(n, n);
    for (int b = 0; b < t; b += 2) {
        result.canonical.at(b, b + 1) = Rational(1);
        result.canonical.at(b + 1, b) = Rational(-1);
    }
    result.P = std::move(p);
    if (!(m == result.canonical))
        throw std::logic_error("congruence elimination did not reach canonical form");
    return result;
}

CoefficientMatrix congruence_apply(const RationalMatrix& P, const CoefficientMatrix& A) {
    if (P.cols() != A.dim() || P.rows() != A.dim())
        throw ValidationError("congruence dimension mismatch: P is " + std::to_string(P.rows()) +
                              "x" + std::to_string(P.cols()) + ", A is " +
                              std::to_string(A.dim()) + "x" + std::to_string(A.dim()));
    return CoefficientMatrix(P * A.matrix() * P.transpose());
}

} // namespace psep
