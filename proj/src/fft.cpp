#include "browmad/fft.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace browmad::fft {
namespace {

// Primes up to this size are handled by a direct O(p^2) butterfly; a length
// with any larger prime factor goes through Bluestein.
constexpr std::size_t kMaxDirectRadix = 13;

std::size_t smallest_prime_factor(std::size_t n) {
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            return p;
        }
    }
    return n;
}

bool is_smooth(std::size_t n) {
    while (n > 1) {
        std::size_t p = smallest_prime_factor(n);
        if (p > kMaxDirectRadix) {
            return false;
        }
        n /= p;
    }
    return true;
}

std::vector<Complex> twiddles(std::size_t n) {
    std::vector<Complex> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(n));
    }
    return w;
}

// Decimation in time. `w` holds W_N^j for the top-level N; W_n^k is
// w[k * wstride] for the current sub-length n.
void mixed_radix(const Complex* x, std::size_t stride, Complex* y, std::size_t n,
                 const Complex* w, std::size_t wstride) {
    if (n == 1) {
        y[0] = x[0];
        return;
    }
    const std::size_t p = smallest_prime_factor(n);
    const std::size_t m = n / p;

    if (m == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc{};
            for (std::size_t j = 0; j < n; ++j) {
                acc += x[j * stride] * w[((j * k) % n) * wstride];
            }
            y[k] = acc;
        }
        return;
    }

    for (std::size_t r = 0; r < p; ++r) {
        mixed_radix(x + r * stride, stride * p, y + r * m, m, w, wstride * p);
    }

    Complex t[kMaxDirectRadix];
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t r = 0; r < p; ++r) {
            t[r] = y[r * m + k] * w[((r * k) % n) * wstride];
        }
        for (std::size_t q = 0; q < p; ++q) {
            Complex acc{};
            for (std::size_t r = 0; r < p; ++r) {
                acc += t[r] * w[((r * q * m) % n) * wstride];
            }
            y[q * m + k] = acc;
        }
    }
}

class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        if (n_ <= 1) {
            return;
        }
        if (is_smooth(n_)) {
            table_ = twiddles(n_);
            return;
        }
        std::size_t len = 1;
        while (len < 2 * n_ - 1) {
            len <<= 1;
        }
        inner_ = std::make_unique<Plan>(len);
        chirp_.resize(n_);
        const std::size_t two_n = 2 * n_;
        for (std::size_t k = 0; k < n_; ++k) {
            // k^2 mod 2n keeps the phase argument small and exact.
            std::size_t k2 = (k * k) % two_n;
            chirp_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) /
                                            static_cast<double>(n_));
        }
        kernel_.assign(len, Complex{});
        kernel_[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n_; ++k) {
            kernel_[k] = std::conj(chirp_[k]);
            kernel_[len - k] = std::conj(chirp_[k]);
        }
        inner_->execute(kernel_);
    }

    void execute(std::span<Complex> data) const {
        if (n_ <= 1) {
            return;
        }
        if (!inner_) {
            std::vector<Complex> out(n_);
            mixed_radix(data.data(), 1, out.data(), n_, table_.data(), 1);
            std::copy(out.begin(), out.end(), data.begin());
            return;
        }
        const std::size_t len = kernel_.size();
        std::vector<Complex> a(len);
        for (std::size_t k = 0; k < n_; ++k) {
            a[k] = data[k] * chirp_[k];
        }
        inner_->execute(a);
        for (std::size_t k = 0; k < len; ++k) {
            a[k] = std::conj(a[k] * kernel_[k]);
        }
        inner_->execute(a);  // conj(FFT(conj(.))) / len is the inverse
        const double scale = 1.0 / static_cast<double>(len);
        for (std::size_t k = 0; k < n_; ++k) {
            data[k] = std::conj(a[k]) * scale * chirp_[k];
        }
    }

private:
    std::size_t n_;
    std::vector<Complex> table_;
    std::unique_ptr<Plan> inner_;
    std::vector<Complex> chirp_;
    std::vector<Complex> kernel_;  // FFT of the conjugate chirp, length inner_
};

}  // namespace

void forward(std::span<Complex> data) { Plan(data.size()).execute(data); }

void inverse(std::span<Complex> data) {
    for (auto& v : data) {
        v = std::conj(v);
    }
    forward(data);
    const double scale = data.empty() ? 1.0 : 1.0 / static_cast<double>(data.size());
    for (auto& v : data) {
        v = std::conj(v) * scale;
    }
}

void forward_2d(std::span<Complex> data, int rows, int cols) {
    const auto r = static_cast<std::size_t>(rows);
    const auto c = static_cast<std::size_t>(cols);
    Plan row_plan(c);
    for (std::size_t i = 0; i < r; ++i) {
        row_plan.execute(data.subspan(i * c, c));
    }
    Plan col_plan(r);
    std::vector<Complex> column(r);
    for (std::size_t j = 0; j < c; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            column[i] = data[i * c + j];
        }
        col_plan.execute(column);
        for (std::size_t i = 0; i < r; ++i) {
            data[i * c + j] = column[i];
        }
    }
}

}  // namespace browmad::fft
