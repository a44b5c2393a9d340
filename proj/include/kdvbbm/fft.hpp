#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace kdvbbm::detail {

// Process-wide cache of FFTW plans, one forward/backward pair per size.
// FFTW_ESTIMATE fixes the algorithm choice deterministically (no timing), so
// repeated runs produce bit-identical transforms; FFTW_UNALIGNED lets the
// cached plan execute on any caller buffer. Plan creation is serialized,
// fftw_execute_dft itself is thread safe.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  void forward(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
    execute(pair_for(n).fwd, in, out);
  }

  void backward(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
    execute(pair_for(n).bwd, in, out);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

 private:
  struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  FftPlans() = default;

  ~FftPlans() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.fwd);
      fftw_destroy_plan(pair.bwd);
    }
  }

  PlanPair& pair_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
    auto* si = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* so = reinterpret_cast<fftw_complex*>(scratch_out.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair;
    pair.fwd = fftw_plan_dft_1d(static_cast<int>(n), si, so, FFTW_FORWARD, flags);
    pair.bwd = fftw_plan_dft_1d(static_cast<int>(n), si, so, FFTW_BACKWARD, flags);
    return plans_.emplace(n, pair).first->second;
  }

  static void execute(fftw_plan plan, const std::complex<double>* in, std::complex<double>* out) {
    // fftw_execute_dft does not modify the input array for out-of-place c2c
    // plans, so the const_cast is safe.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

  std::mutex mutex_;
  std::unordered_map<std::size_t, PlanPair> plans_;
};

// Unnormalized DFT: out[m] = sum_j in[j] * exp(-2*pi*i*m*j/n).
inline void dft_forward(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
  FftPlans::instance().forward(n, in, out);
}

// Unnormalized inverse DFT: out[j] = sum_m in[m] * exp(+2*pi*i*m*j/n).
inline void dft_backward(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
  FftPlans::instance().backward(n, in, out);
}

}  // namespace kdvbbm::detail
