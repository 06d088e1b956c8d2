#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "holifd/rational.hpp"

namespace holifd {

/// Makes the ratio p/q in the scalar type of the active backend.
template <class S>
S scalar_ratio(long long p, long long q)
{
    if constexpr (std::is_same_v<S, double>)
        return static_cast<double>(p) / static_cast<double>(q);
    else
        return S(p, q);
}

template <class S>
bool scalar_is_zero(const S& x)
{
    return x == 0;
}

/// Polynomial in the local element coordinate xi.  Coefficients are stored
/// ascending: c[k] multiplies xi^k.
template <class S>
class Poly {
  public:
    static constexpr int kDegreeCap = 8;

    Poly() = default;
    Poly(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(S v) { return Poly{std::vector<S>{std::move(v)}}; }

    const std::vector<S>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }

    S eval(const S& xi) const
    {
        S acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * xi + c_[k];
        return acc;
    }

    double eval_double(double xi) const
    {
        double acc = 0;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * xi + to_double(c_[k]);
        return acc;
    }

    /// d/dxi.
    Poly derivative() const
    {
        std::vector<S> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * S(static_cast<long>(k)));
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const
    {
        std::vector<S> a(c_.size() + 1, S(0));
        for (std::size_t k = 0; k < c_.size(); ++k)
            a[k + 1] = c_[k] * scalar_ratio<S>(1, static_cast<long long>(k) + 1);
        return Poly(std::move(a));
    }

    /// Integral over one element, xi in [-1/2, 1/2].
    S integrate_element() const
    {
        S acc(0);
        for (std::size_t k = 0; k < c_.size(); k += 2)
            acc += c_[k] * scalar_ratio<S>(1, static_cast<long long>(k + 1) << k);
        return acc;
    }

    Poly operator+(const Poly& o) const
    {
        std::vector<S> r(std::max(c_.size(), o.c_.size()), S(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (o * S(-1)); }
    Poly operator*(const S& s) const
    {
        std::vector<S> r = c_;
        for (auto& v : r) v = v * s;
        return Poly(std::move(r));
    }
    Poly operator*(const Poly& o) const
    {
        if (c_.empty() || o.c_.empty()) return Poly();
        std::vector<S> r(c_.size() + o.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    /// Same polynomial in the floating backend.
    Poly<double> to_double_poly() const
    {
        std::vector<double> r;
        r.reserve(c_.size());
        for (const auto& v : c_) r.push_back(to_double(v));
        return Poly<double>(std::move(r));
    }

  private:
    void trim()
    {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

using DPoly = Poly<double>;
using RPoly = Poly<Rational>;

}  // namespace holifd
