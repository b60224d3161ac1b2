#include "biharm/jet.hpp"

#include "biharm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace biharm {

namespace detail {

using Exponents = std::array<std::uint8_t, Jet::max_vars>;

struct JetLayout {
    struct Term {
        int a;
        int b;
        int out;
    };

    int n_vars = 0;
    int order = 0;
    std::vector<Exponents> index;
    std::vector<int> degree;
    std::vector<double> factorial; // α!
    std::vector<int> lookup;       // base-5 code -> position, -1 if |α| > order
    std::vector<Term> products;
    // derivative[i][k]: position (in this layout) of β + e_i for the k-th
    // index β of the order-1 layout.
    std::vector<std::vector<int>> derivative;

    int code(const Exponents& e) const {
        int c = 0;
        for (int i = n_vars - 1; i >= 0; --i) c = c * 5 + e[i];
        return c;
    }

    int position(const Exponents& e) const { return lookup[code(e)]; }
};

namespace {

// Appends all multi-indices of exactly `deg` in n variables, lexicographically
// descending.
void append_degree(int n, int deg, int var, Exponents& cur, std::vector<Exponents>& out) {
    if (var == n - 1) {
        cur[var] = static_cast<std::uint8_t>(deg);
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int k = deg; k >= 0; --k) {
        cur[var] = static_cast<std::uint8_t>(k);
        append_degree(n, deg - k, var + 1, cur, out);
    }
    cur[var] = 0;
}

JetLayout build_layout(int n, int order) {
    JetLayout L;
    L.n_vars = n;
    L.order = order;
    for (int deg = 0; deg <= order; ++deg) {
        Exponents cur{};
        append_degree(n, deg, 0, cur, L.index);
    }
    int table = 1;
    for (int i = 0; i < n; ++i) table *= 5;
    L.lookup.assign(static_cast<std::size_t>(table), -1);
    for (std::size_t k = 0; k < L.index.size(); ++k) {
        const auto& e = L.index[k];
        int deg = 0;
        double fact = 1.0;
        for (int i = 0; i < n; ++i) {
            deg += e[i];
            for (int j = 2; j <= e[i]; ++j) fact *= j;
        }
        L.degree.push_back(deg);
        L.factorial.push_back(fact);
        L.lookup[static_cast<std::size_t>(L.code(e))] = static_cast<int>(k);
    }
    const int size = static_cast<int>(L.index.size());
    for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b) {
            if (L.degree[a] + L.degree[b] > order) continue;
            Exponents sum{};
            for (int i = 0; i < n; ++i)
                sum[i] = static_cast<std::uint8_t>(L.index[a][i] + L.index[b][i]);
            L.products.push_back({a, b, L.position(sum)});
        }
    }
    if (order > 0) {
        // Positions of degree < order are the prefix of this layout.
        L.derivative.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < size; ++k) {
                if (L.degree[k] >= order) break;
                Exponents up = L.index[k];
                ++up[i];
                L.derivative[i].push_back(L.position(up));
            }
        }
    }
    return L;
}

struct LayoutTable {
    std::array<std::array<JetLayout, Jet::max_order + 1>, Jet::max_vars> layouts;

    LayoutTable() {
        for (int n = 1; n <= Jet::max_vars; ++n)
            for (int k = 0; k <= Jet::max_order; ++k) layouts[n - 1][k] = build_layout(n, k);
    }
};

} // namespace

const JetLayout& layout(int n_vars, int order) {
    if (n_vars < 1 || n_vars > Jet::max_vars)
        throw ConfigurationError("jet n_vars must be in [1, 6], got " + std::to_string(n_vars));
    if (order < 0 || order > Jet::max_order)
        throw ConfigurationError("jet order must be in [0, 4], got " + std::to_string(order));
    static const LayoutTable table;
    return table.layouts[n_vars - 1][order];
}

} // namespace detail

namespace {

detail::Exponents to_exponents(std::span<const int> alpha, int n_vars, int order) {
    if (static_cast<int>(alpha.size()) != n_vars)
        throw UsageError("multi-index has " + std::to_string(alpha.size()) +
                         " entries, jet has " + std::to_string(n_vars) + " variables");
    detail::Exponents e{};
    int deg = 0;
    for (int i = 0; i < n_vars; ++i) {
        if (alpha[i] < 0) throw UsageError("multi-index entries must be non-negative");
        deg += alpha[i];
        if (deg > order)
            throw UsageError("multi-index degree exceeds jet order " + std::to_string(order));
        e[i] = static_cast<std::uint8_t>(alpha[i]);
    }
    return e;
}

constexpr double singular_threshold = 1e-14;

} // namespace

int jet_size(int n_vars, int order) {
    return static_cast<int>(detail::layout(n_vars, order).index.size());
}

Jet::Jet() : Jet(&detail::layout(1, 0), {0.0}) {}

Jet::Jet(const detail::JetLayout* layout, std::vector<double> coeffs)
    : layout_(layout), coeffs_(std::move(coeffs)) {}

Jet Jet::constant(double value, int n_vars, int order) {
    const auto& L = detail::layout(n_vars, order);
    std::vector<double> c(L.index.size(), 0.0);
    c[0] = value;
    return Jet(&L, std::move(c));
}

Jet Jet::variable(int index, double value, int n_vars, int order) {
    const auto& L = detail::layout(n_vars, order);
    if (index < 0 || index >= n_vars)
        throw ConfigurationError("variable index " + std::to_string(index) +
                                 " out of range for " + std::to_string(n_vars) + " variables");
    std::vector<double> c(L.index.size(), 0.0);
    c[0] = value;
    if (order >= 1) c[static_cast<std::size_t>(1 + index)] = 1.0;
    return Jet(&L, std::move(c));
}

Jet Jet::from_coefficients(std::vector<double> coeffs, int n_vars, int order) {
    const auto& L = detail::layout(n_vars, order);
    if (coeffs.size() != L.index.size())
        throw ConfigurationError("expected " + std::to_string(L.index.size()) +
                                 " coefficients, got " + std::to_string(coeffs.size()));
    return Jet(&L, std::move(coeffs));
}

int Jet::n_vars() const noexcept { return layout_->n_vars; }
int Jet::order() const noexcept { return layout_->order; }

double Jet::coefficient(std::span<const int> alpha) const {
    return coeffs_[static_cast<std::size_t>(
        layout_->position(to_exponents(alpha, n_vars(), order())))];
}

double Jet::partial(std::span<const int> alpha) const {
    const int pos = layout_->position(to_exponents(alpha, n_vars(), order()));
    return layout_->factorial[static_cast<std::size_t>(pos)] * coeffs_[static_cast<std::size_t>(pos)];
}

double Jet::d(int i) const {
    if (i < 0 || i >= n_vars()) throw UsageError("variable index out of range");
    if (order() < 1) throw UsageError("first derivative needs a jet of order >= 1");
    return coeffs_[static_cast<std::size_t>(1 + i)];
}

double Jet::d(int i, int j) const {
    if (i < 0 || i >= n_vars() || j < 0 || j >= n_vars())
        throw UsageError("variable index out of range");
    if (order() < 2) throw UsageError("second derivative needs a jet of order >= 2");
    detail::Exponents e{};
    ++e[i];
    ++e[j];
    const int pos = layout_->position(e);
    return layout_->factorial[static_cast<std::size_t>(pos)] * coeffs_[static_cast<std::size_t>(pos)];
}

Jet Jet::derivative(int var) const {
    if (var < 0 || var >= n_vars()) throw UsageError("variable index out of range");
    if (order() < 1) throw UsageError("cannot differentiate an order-0 jet");
    const auto& src = layout_->derivative[static_cast<std::size_t>(var)];
    const auto& L = detail::layout(n_vars(), order() - 1);
    std::vector<double> c(L.index.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double mult = static_cast<double>(L.index[k][static_cast<std::size_t>(var)] + 1);
        c[k] = mult * coeffs_[static_cast<std::size_t>(src[k])];
    }
    return Jet(&L, std::move(c));
}

Jet Jet::truncated(int new_order) const {
    if (new_order > order())
        throw UsageError("cannot raise jet order from " + std::to_string(order()) + " to " +
                         std::to_string(new_order));
    const auto& L = detail::layout(n_vars(), new_order);
    return Jet(&L, std::vector<double>(coeffs_.begin(),
                                       coeffs_.begin() + static_cast<std::ptrdiff_t>(L.index.size())));
}

bool Jet::is_constant() const noexcept {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0.0) return false;
    return true;
}

void Jet::require_same_shape(const Jet& other, const char* op) const {
    if (layout_ != other.layout_)
        throw UsageError(std::string("jet shape mismatch in ") + op + ": (" +
                         std::to_string(n_vars()) + "," + std::to_string(order()) + ") vs (" +
                         std::to_string(other.n_vars()) + "," + std::to_string(other.order()) + ")");
}

Jet& Jet::operator+=(const Jet& other) {
    require_same_shape(other, "add");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& other) {
    require_same_shape(other, "sub");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& other) { return *this = *this * other; }
Jet& Jet::operator/=(const Jet& other) { return *this = *this / other; }

Jet& Jet::operator+=(double s) {
    coeffs_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) {
    coeffs_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator/=(double s) {
    if (std::abs(s) < singular_threshold)
        throw SingularValueError("division by near-zero scalar", s);
    for (auto& c : coeffs_) c /= s;
    return *this;
}

Jet operator-(Jet a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.require_same_shape(b, "mul");
    std::vector<double> c(a.coeffs_.size(), 0.0);
    for (const auto& t : a.layout_->products)
        c[static_cast<std::size_t>(t.out)] +=
            a.coeffs_[static_cast<std::size_t>(t.a)] * b.coeffs_[static_cast<std::size_t>(t.b)];
    return Jet(a.layout_, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
    a.require_same_shape(b, "div");
    return a * reciprocal(b);
}

Jet operator/(double s, const Jet& a) { return s * reciprocal(a); }

Jet compose_univariate(std::span<const double> taylor, const Jet& a) {
    const int k_max = std::min<int>(a.order(), static_cast<int>(taylor.size()) - 1);
    Jet delta = a;
    delta.coeffs_[0] = 0.0;
    Jet result = Jet::constant(k_max >= 0 ? taylor[static_cast<std::size_t>(k_max)] : 0.0,
                               a.n_vars(), a.order());
    for (int k = k_max - 1; k >= 0; --k) {
        result = result * delta;
        result.coeffs_[0] += taylor[static_cast<std::size_t>(k)];
    }
    return result;
}

namespace {

std::vector<double> taylor_buffer(const Jet& a) {
    return std::vector<double>(static_cast<std::size_t>(a.order()) + 1, 0.0);
}

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Jet reciprocal(const Jet& a) {
    const double a0 = a.value();
    if (std::abs(a0) < singular_threshold)
        throw SingularValueError("division by jet with value " + fmt_value(a0), a0);
    auto c = taylor_buffer(a);
    double p = 1.0 / a0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = p;
        p *= -1.0 / a0;
    }
    return compose_univariate(c, a);
}

Jet sin(const Jet& a) {
    const double a0 = a.value();
    auto c = taylor_buffer(a);
    const double s = std::sin(a0), co = std::cos(a0);
    const double cycle[4] = {s, co, -s, -co};
    double fact = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        c[k] = cycle[k % 4] / fact;
    }
    return compose_univariate(c, a);
}

Jet cos(const Jet& a) {
    const double a0 = a.value();
    auto c = taylor_buffer(a);
    const double s = std::sin(a0), co = std::cos(a0);
    const double cycle[4] = {co, -s, -co, s};
    double fact = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        c[k] = cycle[k % 4] / fact;
    }
    return compose_univariate(c, a);
}

Jet exp(const Jet& a) {
    auto c = taylor_buffer(a);
    const double e = std::exp(a.value());
    double fact = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        c[k] = e / fact;
    }
    return compose_univariate(c, a);
}

Jet log(const Jet& a) {
    const double a0 = a.value();
    if (!(a0 > 0.0)) throw DomainError("log of non-positive value " + fmt_value(a0), a0);
    auto c = taylor_buffer(a);
    c[0] = std::log(a0);
    double p = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        p /= a0;
        c[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / static_cast<double>(k);
    }
    return compose_univariate(c, a);
}

Jet sqrt(const Jet& a) {
    const double a0 = a.value();
    if (!(a0 > 0.0)) throw DomainError("sqrt of non-positive value " + fmt_value(a0), a0);
    return pow(a, 0.5);
}

Jet pow(const Jet& a, double exponent) {
    const double a0 = a.value();
    if (std::isfinite(exponent) && exponent == std::round(exponent) && std::abs(exponent) <= 64.0) {
        int n = static_cast<int>(std::abs(exponent));
        Jet result = Jet::constant(1.0, a.n_vars(), a.order());
        Jet base = a;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return exponent < 0 ? reciprocal(result) : result;
    }
    if (!(a0 > 0.0))
        throw DomainError("non-integer power " + fmt_value(exponent) + " of non-positive value " +
                              fmt_value(a0),
                          a0);
    auto c = taylor_buffer(a);
    // c_k = binom(p, k) a0^(p - k)
    double binom = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) binom *= (exponent - static_cast<double>(k - 1)) / static_cast<double>(k);
        c[k] = binom * std::pow(a0, exponent - static_cast<double>(k));
    }
    return compose_univariate(c, a);
}

Jet pow(const Jet& a, const Jet& exponent) {
    if (exponent.is_constant()) return pow(a, exponent.value());
    if (!(a.value() > 0.0))
        throw DomainError("variable power of non-positive value " + fmt_value(a.value()), a.value());
    return exp(exponent * log(a));
}

} // namespace biharm
