#pragma once

#include <complex>

namespace qrk {

// Neumaier-compensated accumulator; add terms in a fixed order for reproducible sums.
template <class T>
class KahanSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if (abs_(sum_) >= abs_(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    KahanSum& operator+=(T x) { add(x); return *this; }
    T value() const { return sum_ + c_; }

private:
    static auto abs_(T v) { using std::abs; return abs(v); }
    T sum_{}, c_{};
};

template <class T>
class KahanSum<std::complex<T>> {
public:
    void add(std::complex<T> x) { re_.add(x.real()); im_.add(x.imag()); }
    KahanSum& operator+=(std::complex<T> x) { add(x); return *this; }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum<T> re_, im_;
};

inline constexpr double kSeriesTol = 1e-18;
inline constexpr int kSeriesCap = 10000;

}  // namespace qrk
