#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mub/reducer.hpp"
#include "mub/sdp.hpp"
#include "mub/types.hpp"

namespace mub {

// Explicit rank-one projectors onto k mutually unbiased bases of C^d, with
// L(w) = trace of the product (so L(1) = d and L(x) = 1). Available for d = 2
// with k <= 3 and for odd prime d with k <= d + 1.
class MubModel {
 public:
  MubModel(int d, int k);
  int d() const { return d_; }
  int k() const { return k_; }
  const Eigen::MatrixXcd &projector(int e, int b) const { return X_[b][e]; }
  double L(const Word &w) const;
  // Average of L over S_d wr S_k, the invariant functional the reducer models.
  double L_invariant(const Word &w) const;

 private:
  int d_, k_;
  std::vector<std::vector<Eigen::MatrixXcd>> X_;
};

// Invariant model values of the reducer variables (indexed by reducer id).
std::vector<double> model_values(const MubModel &model, const Reducer &reducer);

double min_eigenvalue(const Eigen::MatrixXd &A);
Eigen::MatrixXd evaluate_block(const Block &b, const std::vector<double> &values);

struct PhiReport {
  int trials = 0;
  int agreements = 0;
  int psd_trials = 0;
  std::size_t orbit_count = 0;
  std::size_t sum_m2 = 0;
  std::size_t phi_rank = 0;
  bool identity_ok = false;

  bool ok() const {
    return agreements == trials && sum_m2 == orbit_count && phi_rank == orbit_count && identity_ok;
  }
  std::string summary() const;
};

// Compares A psd with Phi(A) psd on random invariant matrices of
// ([d]x[k])^t (mode Full) or [k]^t (mode BasesOnly), and checks that Phi is
// injective on the invariant algebra. With half_level the index set is
// x_{1,1}w, |w| = t, under the stabilizer of x_{1,1}.
PhiReport brute_force_phi_oracle(int d, int k, int t, Mode mode, int trials, double tolerance, std::uint64_t seed = 1,
                                 bool half_level = false);

}  // namespace mub
