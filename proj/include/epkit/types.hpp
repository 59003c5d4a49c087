#ifndef EPKIT_TYPES_HPP
#define EPKIT_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace epkit {

// All energies, widths and couplings are dimensionless. Complex scalars are
// plain std::complex<double>; public constructors validate finiteness so that
// NaN/Inf can only appear downstream as documented sentinels, never as input.
using complex_t = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const complex_t& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

inline void require_finite(const complex_t& z, const char* what) {
    if (!is_finite(z)) {
        throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

// 2x2 complex matrix, the concrete Hamiltonian instance.
struct matrix2 {
    complex_t h11, h12, h21, h22;

    matrix2(complex_t a11, complex_t a12, complex_t a21, complex_t a22)
        : h11(a11), h12(a12), h21(a21), h22(a22) {
        require_finite(h11, "matrix2.h11");
        require_finite(h12, "matrix2.h12");
        require_finite(h21, "matrix2.h21");
        require_finite(h22, "matrix2.h22");
    }

    bool is_symmetric() const { return h12 == h21; }

    // off-diagonal pair related by complex conjugation
    bool is_pt_form() const { return h21 == std::conj(h12); }

    double max_abs() const {
        double m = std::abs(h11);
        m = std::max(m, std::abs(h12));
        m = std::max(m, std::abs(h21));
        return std::max(m, std::abs(h22));
    }
};

// Principal square root with a fixed tie rule: the returned root has
// non-negative real part; when the real part is zero the imaginary part is
// made non-negative. Keeps the two sheets separated the same way everywhere.
inline complex_t branch_sqrt(complex_t z) {
    complex_t s = std::sqrt(z);
    if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) {
        s = -s;
    }
    return s;
}

} // namespace epkit

#endif
