#pragma once

#include <exception>
#include <mutex>

#include <omp.h>

namespace surftri {

/// jobs <= 0 means the OpenMP default.
inline int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

/// Keeps the first exception thrown inside a parallel region so it can be
/// rethrown after the region ends.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  bool failed() const {
    std::lock_guard lock(mu_);
    return ptr_ != nullptr;
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  mutable std::mutex mu_;
  std::exception_ptr ptr_;
};

}  // namespace surftri
