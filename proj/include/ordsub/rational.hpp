/**
 * Exact rational scalars, vectors, and small dense matrices used throughout
 * the library. All arithmetic is GMP-backed and never rounds.
 */

#ifndef ORDSUB_RATIONAL_HPP
#define ORDSUB_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordsub {

/** Base class for every error the library throws. */
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string& what = "dimension mismatch") : Error(what) {}
};
class MalformedRational : public Error {
  public:
    explicit MalformedRational(const std::string& what = "malformed rational") : Error(what) {}
};
class EmptyInput : public Error {
  public:
    explicit EmptyInput(const std::string& what = "operation on empty polyhedron") : Error(what) {}
};
class NotACone : public Error {
  public:
    explicit NotACone(const std::string& what = "polyhedron is not a cone at the origin") : Error(what) {}
};
class PointNotInSet : public Error {
  public:
    explicit PointNotInSet(const std::string& what = "point not in set") : Error(what) {}
};
class PointNotOnGraph : public Error {
  public:
    explicit PointNotOnGraph(const std::string& what = "point not on graph") : Error(what) {}
};
class PointNotInEpigraph : public Error {
  public:
    explicit PointNotInEpigraph(const std::string& what = "point not in generalized epigraph") : Error(what) {}
};
class NotSingleValued : public Error {
  public:
    explicit NotSingleValued(const std::string& what = "mapping is not single-valued") : Error(what) {}
};
class UnresolvedReference : public Error {
  public:
    explicit UnresolvedReference(const std::string& what = "unresolved reference") : Error(what) {}
};
class OpenSetRejected : public Error {
  public:
    explicit OpenSetRejected(const std::string& what = "open sets are not representable") : Error(what) {}
};
class DimensionTooLarge : public Error {
  public:
    explicit DimensionTooLarge(const std::string& what = "oracle supports dimensions <= 3 only") : Error(what) {}
};

/** Arbitrary-precision rational; always kept in lowest terms with positive denominator. */
using Rational = mpq_class;

/** Dense point / direction / dual element; the index is the coordinate. */
using RatVector = std::vector<Rational>;

/**
 * Parses "p", "-p", or "p/q" exactly. Anything else (in particular decimal
 * notation) raises MalformedRational: there is no rounding path into the library.
 */
inline Rational parse_rational(const std::string& text)
{
    if (text.empty()) throw MalformedRational("empty rational literal");
    std::size_t slash = text.find('/');
    const std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
    const std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    auto digits_ok = [](const std::string& s, bool sign_ok) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw MalformedRational("not an exact rational: '" + text + "'");
    const std::string bare_num = (num[0] == '+') ? num.substr(1) : num;
    Rational q;
    if (q.set_str(bare_num + "/" + den, 10) != 0)
        throw MalformedRational("unparsable rational: '" + text + "'");
    if (q.get_den() == 0) throw MalformedRational("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_zero(const RatVector& v)
{
    for (const auto& c : v)
        if (sgn(c) != 0) return false;
    return true;
}

inline Rational dot(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVector add(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVector sub(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVector negate(const RatVector& a)
{
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline RatVector scale(const Rational& c, const RatVector& a)
{
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

/** a + c*b, the workhorse of every elimination step. */
inline RatVector axpy(const RatVector& a, const Rational& c, const RatVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("axpy: size mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
    return r;
}

/** Three-way lexicographic comparison; the total order behind all canonical sorting. */
inline int lex_cmp(const RatVector& a, const RatVector& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

inline bool lex_less(const RatVector& a, const RatVector& b) { return lex_cmp(a, b) < 0; }

/**
 * Scales v by the unique positive rational making all entries coprime integers.
 * Zero vectors pass through. This is the canonical representative of a ray or
 * of an inequality row, where only positive scaling is allowed.
 */
inline RatVector scale_primitive(const RatVector& v)
{
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& q : v) {
        if (sgn(q) == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return v;
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    return scale(factor, v);
}

/** Primitive scaling plus a sign flip making the leading nonzero entry positive
 *  (canonical form for lines and equation rows, where both signs describe the same object). */
inline RatVector scale_primitive_signed(const RatVector& v)
{
    RatVector r = scale_primitive(v);
    for (const auto& q : r) {
        if (sgn(q) > 0) break;
        if (sgn(q) < 0) return negate(r);
    }
    return r;
}

inline std::string format_vector(const RatVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_rational(v[i]);
    }
    return s + ")";
}

/** Row-major dense rational matrix; just enough linear algebra for affine images
 *  and echelon reductions. */
struct RatMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<RatVector> data;  // data[i] has length cols

    RatMatrix() = default;
    RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r, RatVector(c, Rational(0))) {}

    static RatMatrix identity(std::size_t n)
    {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data[i][i] = 1;
        return m;
    }

    Rational& at(std::size_t i, std::size_t j) { return data[i][j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data[i][j]; }

    RatVector apply(const RatVector& x) const
    {
        if (x.size() != cols) throw DimensionMismatch("matrix apply: size mismatch");
        RatVector y(rows, Rational(0));
        for (std::size_t i = 0; i < rows; ++i) y[i] = dot(data[i], x);
        return y;
    }

    RatMatrix transpose() const
    {
        RatMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.data[j][i] = data[i][j];
        return t;
    }
};

/**
 * In-place reduced row echelon form. Returns the pivot column of each surviving
 * row; zero rows are deleted. Rows are rescaled to coprime integers with a
 * positive pivot, so the output is a canonical basis of the row space.
 */
inline std::vector<std::size_t> rref(std::vector<RatVector>& rows)
{
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rational lead = rows[r][col];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][col]) == 0) continue;
            rows[i] = axpy(rows[i], -rows[i][col] / lead, rows[r]);
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    for (auto& row : rows) row = scale_primitive_signed(row);
    return pivots;
}

}  // namespace ordsub

#endif  // ORDSUB_RATIONAL_HPP
