#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace elastocald {

using Complex = std::complex<double>;
using Vec2    = Eigen::Vector2d;
using Vec2c   = Eigen::Vector2cd;
using Mat2    = Eigen::Matrix2d;
using Mat2c   = Eigen::Matrix2cd;
using MatXc   = Eigen::MatrixXcd;
using VecXc   = Eigen::VectorXcd;
using VecX    = Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr Complex iu{0.0, 1.0};

/// Quarter-turn rotation: perp(v) = (-v_y, v_x). Tangents and normals are
/// related by tau = perp(nu).
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline Mat2 rot90() {
  Mat2 a;
  a << 0.0, -1.0, 1.0, 0.0;
  return a;
}

inline double cross2(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

/// Thread count for row-parallel assembly, from ELASTOCALD_THREADS
/// (default: all cores, 1 disables threading).
inline unsigned thread_count() {
  if (const char* env = std::getenv("ELASTOCALD_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

/// Runs fn(i) for i in [0, n). Work items must write disjoint state.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  unsigned nt = thread_count();
  if (nt <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace elastocald
