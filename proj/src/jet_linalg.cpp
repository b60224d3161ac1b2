#include "biharm/jet_linalg.hpp"

#include "biharm/error.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace biharm {

JetMatrix::JetMatrix(int rows, int cols, const Jet& fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

JetVector JetMatrix::row(int i) const {
    JetVector r;
    r.reserve(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r.push_back((*this)(i, j));
    return r;
}

JetVector truncated(std::span<const Jet> v, int order) {
    JetVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.truncated(order));
    return out;
}

JetMatrix truncated(const JetMatrix& m, int order) {
    if (m.rows() == 0) return m;
    JetMatrix out(m.rows(), m.cols(), m(0, 0).truncated(order));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).truncated(order);
    return out;
}

JetVector derivative(std::span<const Jet> v, int var) {
    JetVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.derivative(var));
    return out;
}

JetMatrix derivative(const JetMatrix& m, int var) {
    if (m.rows() == 0) return m;
    JetMatrix out(m.rows(), m.cols(), m(0, 0).derivative(var));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative(var);
    return out;
}

std::vector<double> values(std::span<const Jet> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.value());
    return out;
}

std::vector<double> values(const JetMatrix& m) {
    std::vector<double> out;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j).value());
    return out;
}

Jet dot(std::span<const Jet> a, std::span<const Jet> b) {
    if (a.size() != b.size() || a.empty()) throw UsageError("dot: size mismatch");
    Jet s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Jet bilinear(const JetMatrix& g, std::span<const Jet> a, std::span<const Jet> b) {
    return dot(a, apply(g, b));
}

JetVector apply(const JetMatrix& g, std::span<const Jet> a) {
    if (static_cast<int>(a.size()) != g.cols()) throw UsageError("apply: size mismatch");
    JetVector out;
    out.reserve(static_cast<std::size_t>(g.rows()));
    for (int i = 0; i < g.rows(); ++i) {
        Jet s = g(i, 0) * a[0];
        for (int j = 1; j < g.cols(); ++j) s += g(i, j) * a[static_cast<std::size_t>(j)];
        out.push_back(std::move(s));
    }
    return out;
}

JetMatrix inverse(const JetMatrix& m) {
    const int n = m.rows();
    if (n == 0 || m.cols() != n) throw UsageError("inverse: matrix must be square");
    JetMatrix a = m;
    const Jet zero = m(0, 0) * 0.0;
    JetMatrix inv(n, n, zero);
    for (int i = 0; i < n; ++i) inv(i, i) = zero + 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col).value()) > std::abs(a(pivot, col).value())) pivot = r;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const Jet p = reciprocal(a(col, col));
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) * p;
            inv(col, j) = inv(col, j) * p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet factor = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

Jet determinant(const JetMatrix& m) {
    const int n = m.rows();
    if (n == 0 || m.cols() != n) throw UsageError("determinant: matrix must be square");
    // Laplace expansion over column subsets: minor[S] is the determinant of
    // the first |S| rows restricted to the columns in S. No division, so a
    // matrix whose value is singular still gets exact higher-order terms.
    const unsigned full = (1u << n) - 1u;
    std::vector<Jet> minor(full + 1u, m(0, 0) * 0.0);
    minor[0] += 1.0;
    for (unsigned S = 1; S <= full; ++S) {
        const int k = std::popcount(S);
        Jet acc = minor[0] * 0.0;
        for (int j = 0; j < n; ++j) {
            if (!(S & (1u << j))) continue;
            const int above = std::popcount(S >> (j + 1));
            const Jet term = m(k - 1, j) * minor[S & ~(1u << j)];
            if (above % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        minor[S] = std::move(acc);
    }
    return minor[full];
}

JetMatrix gram_schmidt(const JetMatrix& g) {
    const int n = g.rows();
    if (n == 0 || g.cols() != n) throw UsageError("gram_schmidt: metric must be square");
    const Jet zero = g(0, 0) * 0.0;
    JetMatrix frame(n, n, zero);
    for (int k = 0; k < n; ++k) {
        JetVector v(static_cast<std::size_t>(n), zero);
        v[static_cast<std::size_t>(k)] = zero + 1.0;
        for (int j = 0; j < k; ++j) {
            const JetVector ej = frame.row(j);
            // ⟨∂_k, e_j⟩ = Σ_a g(k, a) e_j^a
            Jet proj = g(k, 0) * ej[0];
            for (int a = 1; a < n; ++a) proj += g(k, a) * ej[static_cast<std::size_t>(a)];
            for (int a = 0; a < n; ++a) v[static_cast<std::size_t>(a)] -= proj * ej[static_cast<std::size_t>(a)];
        }
        const Jet norm2 = bilinear(g, v, v);
        if (!(norm2.value() > 0.0))
            throw DegenerateImmersionError("metric is not positive definite (Gram–Schmidt norm² " +
                                               std::to_string(norm2.value()) + ")",
                                           norm2.value());
        const Jet inv_norm = reciprocal(sqrt(norm2));
        for (int a = 0; a < n; ++a) frame(k, a) = v[static_cast<std::size_t>(a)] * inv_norm;
    }
    return frame;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec axpy(double alpha, std::span<const double> x, std::span<const double> y) {
    Vec out(y.begin(), y.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * x[i];
    return out;
}

Vec scaled(double alpha, std::span<const double> x) {
    Vec out(x.begin(), x.end());
    for (auto& v : out) v *= alpha;
    return out;
}

} // namespace biharm
