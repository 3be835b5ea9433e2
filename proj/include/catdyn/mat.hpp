// mat.hpp — dense square complex matrices sized for effective-qubit work
// (4x4, 16x16) and for truncated Fock spaces. Row-major, value semantics.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace catdyn {

using cx = std::complex<double>;

class CMat {
public:
    CMat() = default;
    explicit CMat(std::size_t n) : n_(n), a_(n * n, cx{0.0, 0.0}) {}

    static CMat identity(std::size_t n) {
        CMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }

    cx& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    cx* data() { return a_.data(); }
    const cx* data() const { return a_.data(); }

    CMat adjoint() const {
        CMat m(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cx trace() const {
        cx t{0.0, 0.0};
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    // Largest absolute deviation from Hermiticity.
    double hermiticity_defect() const {
        double d = 0.0;
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = r; c < n_; ++c)
                d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return d;
    }

    void symmetrize_hermitian() {
        for (std::size_t r = 0; r < n_; ++r) {
            (*this)(r, r) = cx{(*this)(r, r).real(), 0.0};
            for (std::size_t c = r + 1; c < n_; ++c) {
                const cx avg = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
                (*this)(r, c) = avg;
                (*this)(c, r) = std::conj(avg);
            }
        }
    }

    CMat& operator+=(const CMat& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMat& operator*=(cx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat l, const CMat& r) { return l += r; }
    friend CMat operator-(CMat l, const CMat& r) { return l -= r; }
    friend CMat operator*(cx s, CMat m) { return m *= s; }

    friend CMat operator*(const CMat& l, const CMat& r) {
        l.check_same(r);
        const std::size_t n = l.n_;
        CMat out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cx lik = l(i, k);
                if (lik == cx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * r(k, j);
            }
        return out;
    }

private:
    void check_same(const CMat& o) const {
        if (n_ != o.n_) throw std::invalid_argument("CMat: dimension mismatch");
    }

    std::size_t n_ = 0;
    std::vector<cx> a_;
};

inline double frobenius_norm(const CMat& m) {
    double s = 0.0;
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n * n; ++i) s += std::norm(m.data()[i]);
    return std::sqrt(s);
}

inline double frobenius_distance(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("frobenius_distance: dimension mismatch");
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n * n; ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

} // namespace catdyn
