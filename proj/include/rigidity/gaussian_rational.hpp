#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace rigidity {

/// Exact element a + b*i of Q(i). Both parts are canonical GMP rationals
/// (lowest terms, positive denominator).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT(implicit)
    GaussianRational(int value) : re_(value) {}   // NOLINT(implicit)
    GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& real() const noexcept { return re_; }
    const mpq_class& imag() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_gaussian_integer() const {
        return re_.get_den() == 1 && im_.get_den() == 1;
    }

    GaussianRational conj() const { return {re_, -im_}; }
    /// a^2 + b^2
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    /// Throws InvalidArgument on zero.
    GaussianRational inverse() const;

    /// Least common multiple of the denominators of both parts.
    mpz_class denominator_lcm() const;

    /// Exact square root inside Q(i), when one exists. The root returned has
    /// positive real part, or zero real part and nonnegative imaginary part.
    std::optional<GaussianRational> sqrt() const;

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Plain rendering, e.g. "3/2", "-i", "1+2i". The polynomial formatter has its own rules.
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

}  // namespace rigidity
