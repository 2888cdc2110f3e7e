#include "infotopo/miniball.hpp"

#include <algorithm>
#include <cmath>
#include <list>

#include "infotopo/errors.hpp"

namespace infotopo {

namespace {

class MoveToFront {
public:
  explicit MoveToFront(const std::vector<Eigen::VectorXd> &points)
      : points_(points), dim_(points.front().size()) {
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
      order_.push_back(i);
  }

  EuclideanBall solve() {
    recurse(order_.end());
    EuclideanBall ball;
    ball.center = center_;
    ball.support = ball_support_;
    double r2 = 0;
    for (const auto &p : points_)
      r2 = std::max(r2, (p - center_).squaredNorm());
    ball.radius = std::sqrt(r2);
    return ball;
  }

private:
  using Iter = std::list<int>::iterator;

  void recurse(Iter end) {
    if (static_cast<Eigen::Index>(support_.size()) == dim_ + 1)
      return;
    for (Iter it = order_.begin(); it != end;) {
      Iter next = std::next(it);
      if (outside(points_[*it]) && push(*it)) {
        recurse(it);
        pop();
        if (it != order_.begin())
          order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
  }

  bool outside(const Eigen::VectorXd &p) const {
    if (squared_radius_ < 0)
      return true;
    const double d2 = (p - center_).squaredNorm();
    return d2 > squared_radius_ * (1 + 1e-12) + 1e-300;
  }

  // Circumball of the support plus `index` within their affine hull; refuses
  // affinely dependent support sets.
  bool push(int index) {
    std::vector<int> candidate = support_;
    candidate.push_back(index);
    const Eigen::VectorXd &origin = points_[candidate.front()];
    const auto k = static_cast<Eigen::Index>(candidate.size()) - 1;
    Eigen::VectorXd center = origin;
    if (k > 0) {
      Eigen::MatrixXd v(dim_, k);
      for (Eigen::Index j = 0; j < k; ++j)
        v.col(j) = points_[candidate[j + 1]] - origin;
      const Eigen::MatrixXd gram = v.transpose() * v;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(2.0 * gram);
      lu.setThreshold(1e-12);
      if (lu.rank() < k)
        return false;
      const Eigen::VectorXd lambda = lu.solve(Eigen::VectorXd(gram.diagonal()));
      center += v * lambda;
    }
    support_ = std::move(candidate);
    ball_support_ = support_;
    center_ = std::move(center);
    squared_radius_ = (origin - center_).squaredNorm();
    return true;
  }

  // The ball found deeper in the recursion stays current; only the boundary
  // constraint is released.
  void pop() { support_.pop_back(); }

  const std::vector<Eigen::VectorXd> &points_;
  Eigen::Index dim_;
  std::list<int> order_;
  std::vector<int> support_;
  Eigen::VectorXd center_;
  double squared_radius_ = -1;
  std::vector<int> ball_support_;
};

// Fischer, Gaertner and Kutz: walk the center toward the circumcenter of the
// current support, adding points that reach the boundary on the way and
// dropping support points with negative affine weight.
class Walk {
public:
  explicit Walk(const std::vector<Eigen::VectorXd> &points) : points_(points) {}

  EuclideanBall solve() {
    const std::size_t n = points_.size();
    Eigen::VectorXd c = points_.front();
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if ((points_[i] - c).squaredNorm() > (points_[far] - c).squaredNorm())
        far = i;
    std::vector<int> support{static_cast<int>(far)};
    Eigen::VectorXd weights;

    for (std::size_t iter = 0; iter < 100 * n + 1000; ++iter) {
      const Eigen::VectorXd target = circumcenter(support, weights);
      const Eigen::VectorXd d = target - c;
      const Eigen::VectorXd &s = points_[support.front()];
      const double r2 = (s - c).squaredNorm();
      double t_min = 1;
      int hit = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(support.begin(), support.end(), static_cast<int>(i)) != support.end())
          continue;
        const double denom = 2 * d.dot(s - points_[i]);
        if (denom <= 1e-14 * std::max(1.0, d.norm() * (s - points_[i]).norm()))
          continue;
        const double t = std::max(0.0, (r2 - (points_[i] - c).squaredNorm()) / denom);
        if (t < t_min) {
          t_min = t;
          hit = static_cast<int>(i);
        }
      }
      if (hit >= 0) {
        c += t_min * d;
        support.push_back(hit);
        continue;
      }
      c = target;
      Eigen::Index worst;
      if (weights.minCoeff(&worst) >= 0)
        break;
      support.erase(support.begin() + worst);
    }

    EuclideanBall ball;
    ball.center = c;
    double r2 = 0;
    for (const auto &p : points_)
      r2 = std::max(r2, (p - c).squaredNorm());
    ball.radius = std::sqrt(r2);
    for (Eigen::Index k = 0; k < weights.size(); ++k)
      if (weights[k] > 0)
        ball.support.push_back(support[k]);
    return ball;
  }

private:
  // Center of the smallest sphere through the support within its affine
  // hull; `weights` receives the affine coordinates of that center.
  Eigen::VectorXd circumcenter(const std::vector<int> &support, Eigen::VectorXd &weights) const {
    const Eigen::VectorXd &origin = points_[support.front()];
    const auto k = static_cast<Eigen::Index>(support.size()) - 1;
    weights = Eigen::VectorXd::Ones(k + 1);
    if (k == 0)
      return origin;
    Eigen::MatrixXd v(origin.size(), k);
    for (Eigen::Index j = 0; j < k; ++j)
      v.col(j) = points_[support[j + 1]] - origin;
    const Eigen::MatrixXd gram = v.transpose() * v;
    const Eigen::VectorXd lambda =
        (2.0 * gram).completeOrthogonalDecomposition().solve(Eigen::VectorXd(gram.diagonal()));
    weights[0] = 1 - lambda.sum();
    weights.tail(k) = lambda;
    return origin + v * lambda;
  }

  const std::vector<Eigen::VectorXd> &points_;
};

// Above this size the recursion can blow up on near-cospherical inputs.
constexpr std::size_t kRecursionLimit = 12;

} // namespace

EuclideanBall minimal_enclosing_ball(const std::vector<Eigen::VectorXd> &points) {
  if (points.empty())
    throw DomainError("minimal enclosing ball of an empty set");
  for (const auto &p : points)
    if (p.size() != points.front().size())
      throw DomainError("points of mixed dimension");
  if (points.size() > kRecursionLimit)
    return Walk(points).solve();
  return MoveToFront(points).solve();
}

} // namespace infotopo
