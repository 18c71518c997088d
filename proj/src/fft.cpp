#include "tsbound/fft.hpp"

#include <cmath>
#include <cstddef>

namespace tsbound::fft {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative in-place radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

// Bluestein chirp-z transform for arbitrary n, built on power-of-two FFTs.
std::vector<std::complex<double>> fft_bluestein(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n - 1);

    // Chirp table; the exponent is reduced mod 2n to keep angles small.
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t j2 = (j * j) % (2 * n);
        const double ang = -kPi * static_cast<double>(j2) / static_cast<double>(n);
        chirp[j] = std::complex<double>(std::cos(ang), std::sin(ang));
    }

    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    std::vector<std::complex<double>> b(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) {
        b[j] = std::conj(chirp[j]);
        b[m - j] = b[j];
    }

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

} // namespace

std::vector<std::complex<double>> transform(std::vector<std::complex<double>> input) {
    if (input.size() < 2) return input;
    if (is_pow2(input.size())) {
        fft_pow2(input, false);
        return input;
    }
    return fft_bluestein(input);
}

std::vector<double> amplitude(const std::vector<double>& window) {
    std::vector<std::complex<double>> buf(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) buf[i] = {window[i], 0.0};
    buf = transform(std::move(buf));
    std::vector<double> amp(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) amp[i] = std::abs(buf[i]);
    return amp;
}

} // namespace tsbound::fft
