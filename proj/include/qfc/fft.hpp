#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qfc {

using cplx = std::complex<double>;

namespace detail {
void* fftw_allocate(std::size_t bytes);
void fftw_deallocate(void* p) noexcept;
}  // namespace detail

// Allocator returning memory with the alignment FFTW's SIMD kernels expect.
template <typename T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <typename U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}
    T* allocate(std::size_t n) { return static_cast<T*>(detail::fftw_allocate(n * sizeof(T))); }
    void deallocate(T* p, std::size_t) noexcept { detail::fftw_deallocate(p); }
    template <typename U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using AlignedVector = std::vector<cplx, FftwAllocator<cplx>>;

// In-place complex FFT of a fixed length, backed by FFTW.
//
// Plans are created once per length (FFTW_ESTIMATE, so the algorithm choice is
// reproducible) and shared between instances. forward/backward may be called
// concurrently from any number of threads. backward is unnormalized.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::span<cplx> data) const;
    void backward(std::span<cplx> data) const;

private:
    std::size_t n_;
    void* forward_plan_;
    void* backward_plan_;
};

}  // namespace qfc
