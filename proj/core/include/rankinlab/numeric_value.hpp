#pragma once
// Dual-mode scalar: exact rational where formulas are algebraic, complex
// double elsewhere.  GaussianRational carries exact a + b*i values through
// the half-integral coefficient engine.

#include <complex>
#include <boost/multiprecision/cpp_int.hpp>

namespace rankinlab {

using ExactRational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

struct GaussianRational {
    ExactRational re{0}, im{0};

    GaussianRational() = default;
    GaussianRational(ExactRational r, ExactRational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational real(ExactRational r) { return {std::move(r), 0}; }

    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator*(const ExactRational& r) const { return {re * r, im * r}; }
    GaussianRational conj() const { return {re, -im}; }
    bool is_real() const { return im == 0; }
    Complex to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

class NumericValue {
  public:
    NumericValue() : exact_(true), rat_(0) {}
    explicit NumericValue(ExactRational r) : exact_(true), rat_(std::move(r)) {}
    explicit NumericValue(Complex z) : exact_(false), app_(z) {}
    static NumericValue from_int(long long n) { return NumericValue(ExactRational(n)); }

    bool is_exact() const { return exact_; }
    const ExactRational& rational() const {
        if (!exact_) throw std::logic_error("NumericValue: not exact");
        return rat_;
    }
    Complex to_complex() const {
        return exact_ ? Complex{static_cast<double>(rat_), 0.0} : app_;
    }

  private:
    bool exact_;
    ExactRational rat_{0};
    Complex app_{0.0, 0.0};
};

}  // namespace rankinlab
