#include "skewdiff/frame.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace skewdiff {

HyperplaneFrame::HyperplaneFrame(Eigen::VectorXd nu) : nu_(std::move(nu)) {
  if (nu_.size() < 2) throw std::invalid_argument("hyperplane frame needs d >= 2");
  const double norm = nu_.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("hyperplane normal must be nonzero");
  nu_ /= norm;
  // The first Householder column is ±ν; the remaining ones span S.
  const Eigen::MatrixXd column = nu_;
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  const Eigen::MatrixXd q = qr.householderQ();
  basis_ = q.rightCols(nu_.size() - 1);
}

HyperplaneFrame HyperplaneFrame::canonical(std::size_t dim) {
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  if (dim > 0) nu(0) = 1.0;
  return HyperplaneFrame(std::move(nu));
}

WienerPath normal_driver(const WienerPath& w, const HyperplaneFrame& frame) {
  if (w.dims() != frame.dim()) throw std::invalid_argument("driver and frame dimensions differ");
  const std::size_t nodes = w.grid().node_count();
  std::vector<double> values(nodes, 0.0);
  for (std::size_t k = 1; k < nodes; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < w.dims(); ++i) dot += frame.nu()(static_cast<Eigen::Index>(i)) * w.at(k, i);
    values[k] = dot;
  }
  return WienerPath(w.grid(), 1, std::move(values));
}

}  // namespace skewdiff
