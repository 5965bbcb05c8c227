#pragma once

namespace bwl {

struct ToleranceConfig {
  double herm = 1e-10;         // relative to ||M||_F
  double eig = 1e-10;          // relative to max(1, ||M||_2)
  double clamp = 1e-12;        // inverse-DFT roundoff clamped to zero
  double symmetry = 1e-9;      // |alpha_k - alpha_{n-k}|
  double circulant = 1e-9;     // |a_ij - a_{i+1,j+1}|
  double gram = 1e-9;
  double sphere = 1e-9;
  double certificate = 1e-10;  // PSD / residual / pairing checks
};

inline const ToleranceConfig& default_tolerances() {
  static const ToleranceConfig cfg{};
  return cfg;
}

}  // namespace bwl
