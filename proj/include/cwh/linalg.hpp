#pragma once

// Dense SVD of Eigen matrices (divide and conquer).

#include <Eigen/Dense>

#include "cwh/error.hpp"

namespace cwh::linalg {

enum class SvdJob { values_only, thin_vectors };

struct Svd {
  Eigen::VectorXd singular_values;  // descending
  Eigen::MatrixXd U;                // empty for values_only
  Eigen::MatrixXd V;                // right singular vectors as columns
};

inline Svd svd(const Eigen::MatrixXd& a, SvdJob job = SvdJob::thin_vectors) {
  require(a.allFinite(), ErrorCode::numerical, "SVD input has non-finite entries");
  const unsigned opts = job == SvdJob::thin_vectors ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXd> dec(a, opts);
  require(dec.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
  Svd out;
  out.singular_values = dec.singularValues();
  if (job == SvdJob::thin_vectors) {
    out.U = dec.matrixU();
    out.V = dec.matrixV();
  }
  return out;
}

}  // namespace cwh::linalg
