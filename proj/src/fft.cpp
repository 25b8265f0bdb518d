#include "qfc/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <new>
#include <mutex>
#include <vector>

#include "qfc/error.hpp"

namespace qfc {
namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plans live for the lifetime of the process; FFTW's planner is not
// re-entrant, so creation is serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

PlanPair plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Plans are made for SIMD-aligned data; misaligned callers go through an
    // aligned scratch copy so that every transform uses the same codelets.
    fftw_complex* buf = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE;
    PlanPair p;
    p.forward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (p.forward == nullptr || p.backward == nullptr) {
        throw Error("FFTW failed to create a plan of length " + std::to_string(n));
    }
    cache.emplace(n, p);
    return p;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw InvalidArgument("FFT length must be positive");
    auto p = plans_for(n);
    forward_plan_ = p.forward;
    backward_plan_ = p.backward;
}

namespace {

void execute(void* plan, std::span<cplx> data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    if (fftw_alignment_of(reinterpret_cast<double*>(buf)) == 0) {
        fftw_execute_dft(static_cast<fftw_plan>(plan), buf, buf);
        return;
    }
    thread_local AlignedVector scratch;
    scratch.assign(data.begin(), data.end());
    auto* tmp = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan), tmp, tmp);
    std::copy(scratch.begin(), scratch.end(), data.begin());
}

}  // namespace

void Fft::forward(std::span<cplx> data) const {
    if (data.size() != n_) throw InvalidArgument("FFT buffer has the wrong length");
    execute(forward_plan_, data);
}

void Fft::backward(std::span<cplx> data) const {
    if (data.size() != n_) throw InvalidArgument("FFT buffer has the wrong length");
    execute(backward_plan_, data);
}

void* detail::fftw_allocate(std::size_t bytes) {
    void* p = fftw_malloc(bytes);
    if (p == nullptr) throw std::bad_alloc();
    return p;
}

void detail::fftw_deallocate(void* p) noexcept { fftw_free(p); }

}  // namespace qfc
