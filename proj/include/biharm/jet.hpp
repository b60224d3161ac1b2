#pragma once

#include <span>
#include <vector>

namespace biharm {

namespace detail {
struct JetLayout;
}

/// Truncated multivariate Taylor expansion of a scalar about a point.
///
/// Coefficients follow the Taylor convention coeffs[α] = ∂^α f / α!, stored
/// densely in graded-lexicographic order of the multi-index α: all indices of
/// degree 0, then degree 1, and so on, with lexicographically larger indices
/// first inside a degree ((1,0) before (0,1)). Because the ordering is graded,
/// the coefficients of a lower-order truncation form a prefix.
///
/// Jets only combine with jets of identical (n_vars, order); mismatches raise
/// UsageError. Use truncated() to bring a jet down to a common order.
class Jet {
public:
    static constexpr int max_vars = 6;
    static constexpr int max_order = 4;

    /// Constant 0 in one variable at order 0.
    Jet();

    static Jet constant(double value, int n_vars, int order);
    static Jet variable(int index, double value, int n_vars, int order);

    /// Raw coefficients in layout order. Size is C(n_vars + order, order).
    static Jet from_coefficients(std::vector<double> coeffs, int n_vars, int order);

    int n_vars() const noexcept;
    int order() const noexcept;
    std::size_t size() const noexcept { return coeffs_.size(); }

    double value() const noexcept { return coeffs_[0]; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }

    /// Taylor coefficient ∂^α f / α!.
    double coefficient(std::span<const int> alpha) const;
    /// The derivative ∂^α f at the expansion point.
    double partial(std::span<const int> alpha) const;
    /// ∂f/∂y_i.
    double d(int i) const;
    /// ∂²f/∂y_i∂y_j.
    double d(int i, int j) const;

    /// ∂f/∂y_i as a jet of order - 1.
    Jet derivative(int var) const;
    /// Drops every coefficient of degree above `order`.
    Jet truncated(int order) const;
    /// True when every non-constant coefficient is exactly zero.
    bool is_constant() const noexcept;

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Jet& other);
    Jet& operator/=(const Jet& other);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    friend Jet operator-(Jet a);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, Jet a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }
    friend Jet operator/(double s, const Jet& a);

private:
    Jet(const detail::JetLayout* layout, std::vector<double> coeffs);

    void require_same_shape(const Jet& other, const char* op) const;

    const detail::JetLayout* layout_;
    std::vector<double> coeffs_;

    friend Jet compose_univariate(std::span<const double> taylor, const Jet& a);
};

/// Evaluates Σ taylor[k]·(a − a₀)^k by Horner's rule in the nilpotent part of
/// `a`; entries beyond a.order() are ignored. `taylor[k]` is g^(k)(a₀)/k! for
/// the univariate function g being composed.
Jet compose_univariate(std::span<const double> taylor, const Jet& a);

Jet reciprocal(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
/// Integer exponents use repeated multiplication and accept any base (a zero
/// base with a negative exponent is a singular value); other exponents need a
/// positive base.
Jet pow(const Jet& a, double exponent);
/// Non-constant exponent: exp(e·log a), positive base only.
Jet pow(const Jet& a, const Jet& exponent);

/// Number of Taylor coefficients, C(n_vars + order, order).
int jet_size(int n_vars, int order);

} // namespace biharm
