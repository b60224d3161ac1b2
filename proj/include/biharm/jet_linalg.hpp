#pragma once

#include "biharm/jet.hpp"

#include <span>
#include <vector>

namespace biharm {

using JetVector = std::vector<Jet>;

/// Small dense row-major matrix of jets sharing one (n_vars, order) shape.
class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(int rows, int cols, const Jet& fill);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    Jet& operator()(int i, int j) { return data_[index(i, j)]; }
    const Jet& operator()(int i, int j) const { return data_[index(i, j)]; }

    JetVector row(int i) const;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Jet> data_;
};

JetVector truncated(std::span<const Jet> v, int order);
JetMatrix truncated(const JetMatrix& m, int order);
JetVector derivative(std::span<const Jet> v, int var);
JetMatrix derivative(const JetMatrix& m, int var);

std::vector<double> values(std::span<const Jet> v);
std::vector<double> values(const JetMatrix& m); // row-major

Jet dot(std::span<const Jet> a, std::span<const Jet> b);
/// aᵀ G b.
Jet bilinear(const JetMatrix& g, std::span<const Jet> a, std::span<const Jet> b);
/// G a.
JetVector apply(const JetMatrix& g, std::span<const Jet> a);

/// Gauss–Jordan elimination with partial pivoting on the constant term.
JetMatrix inverse(const JetMatrix& m);
Jet determinant(const JetMatrix& m);

/// Orthonormal frame for the metric `g` obtained by Gram–Schmidt on the
/// coordinate fields in index order. Row k holds the coordinate components of
/// e_k.
JetMatrix gram_schmidt(const JetMatrix& g);

// Plain-double helpers for point-level quantities.
using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vec axpy(double alpha, std::span<const double> x, std::span<const double> y); // αx + y
Vec scaled(double alpha, std::span<const double> x);

} // namespace biharm
