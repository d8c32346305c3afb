#pragma once

// Weighted 2D point store: range sum, absolute point update, and revertible
// range multiply (zero factors counted, not absorbed).
//
// Implemented as a kd-tree over rank-translated coordinates with lazy
// (factor, zero-shift) tags. Every operation is exact; cost per range
// operation is O(sqrt(m)).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dominion/number.hpp"

namespace dominion {

template <class C>
struct Bound {
  std::optional<C> value;  // empty = unbounded
  bool strict = false;

  static Bound open(C v) { return Bound{std::move(v), true}; }
  static Bound closed(C v) { return Bound{std::move(v), false}; }
  static Bound none() { return Bound{}; }
};

template <class C>
struct Range2D {
  Bound<C> x_lo, x_hi, y_lo, y_hi;

  static Range2D all() { return {}; }

  /// x < px and y > py.
  static Range2D quadrant_nw(C px, C py) {
    Range2D r;
    r.x_hi = Bound<C>::open(std::move(px));
    r.y_lo = Bound<C>::open(std::move(py));
    return r;
  }

  /// x < px, any y.
  static Range2D strip_left(C px) {
    Range2D r;
    r.x_hi = Bound<C>::open(std::move(px));
    return r;
  }

  static Range2D box(C xl, C xh, C yl, C yh) {
    return Range2D{Bound<C>::closed(std::move(xl)), Bound<C>::closed(std::move(xh)),
                   Bound<C>::closed(std::move(yl)), Bound<C>::closed(std::move(yh))};
  }

  bool contains(const C& x, const C& y) const {
    return above(x_lo, x) && below(x_hi, x) && above(y_lo, y) && below(y_hi, y);
  }

 private:
  static bool above(const Bound<C>& b, const C& v) {
    if (!b.value) return true;
    return b.strict ? *b.value < v : !(v < *b.value);
  }
  static bool below(const Bound<C>& b, const C& v) {
    if (!b.value) return true;
    return b.strict ? v < *b.value : !(*b.value < v);
  }
};

class UnknownPoint : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ZeroCounterUnderflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class T, class C = Rational>
class RangeTree2D {
 public:
  RangeTree2D() = default;

  explicit RangeTree2D(std::vector<std::pair<C, C>> points) : pts_(std::move(points)) {
    const std::size_t m = pts_.size();
    xs_.reserve(m);
    ys_.reserve(m);
    for (const auto& [x, y] : pts_) {
      xs_.push_back(x);
      ys_.push_back(y);
    }
    sort_unique(xs_);
    sort_unique(ys_);
    rx_.resize(m);
    ry_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      rx_[i] = static_cast<int>(std::lower_bound(xs_.begin(), xs_.end(), pts_[i].first) - xs_.begin());
      ry_[i] = static_cast<int>(std::lower_bound(ys_.begin(), ys_.end(), pts_[i].second) - ys_.begin());
    }
    if (m == 0) return;
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    pos_.resize(m);
    nodes_.resize(2 * m - 1);
    build(0, 0, m);
  }

  std::size_t size() const { return pts_.size(); }
  const std::pair<C, C>& point(std::size_t id) const { return pts_.at(id); }

  /// Id of the point at exactly (x, y), if any.
  std::optional<std::size_t> find(const C& x, const C& y) const {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (pts_[i].first == x && pts_[i].second == y) return i;
    }
    return std::nullopt;
  }

  T query(const Range2D<C>& r) {
    Box b;
    if (!to_box(r, b)) return T(0);
    return query_rec(0, 0, size(), b);
  }

  /// Absolute write: the point's weight becomes w whatever was pending on it.
  void update(std::size_t id, const T& w) {
    if (id >= size()) throw UnknownPoint("range tree: unknown point id " + std::to_string(id));
    update_rec(0, 0, size(), pos_[id], w);
  }

  void multiply(const Range2D<C>& r, const T& delta) {
    Box b;
    if (!to_box(r, b)) return;
    Scale s = ScalarTraits<T>::is_zero(delta) ? Scale{T(1), 1} : Scale{delta, 0};
    apply_rec(0, 0, size(), b, s);
  }

  /// Inverse of multiply(r, 0). Throws ZeroCounterUnderflow, leaving the
  /// tree untouched, if some point in r has no pending zero factor.
  void divide_zero(const Range2D<C>& r) {
    Box b;
    if (!to_box(r, b)) return;
    if (min_zero_rec(0, 0, size(), b) <= 0) {
      throw ZeroCounterUnderflow("divide_zero over a range holding a point with zero-counter 0");
    }
    apply_rec(0, 0, size(), b, Scale{T(1), -1});
  }

  /// Current weight of a single point.
  T weight(std::size_t id) {
    if (id >= size()) throw UnknownPoint("range tree: unknown point id " + std::to_string(id));
    return leaf_value(0, 0, size(), pos_[id]);
  }

 private:
  struct Scale {
    T factor;
    int zeros;
  };

  struct Node {
    int x0, x1, y0, y1;  // bounding box in ranks
    int minz = 0;        // leaf: zero-counter
    T sum = T(0);        // leaf: nonzero part; inner: sum over leaves at minz
    T tag = T(1);
    int tagz = 0;
    bool tagged = false;
  };

  struct Box {
    int x0, x1, y0, y1;
  };

  static void sort_unique(std::vector<C>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  static std::size_t right_of(std::size_t u, std::size_t l, std::size_t mid) {
    return u + 2 * (mid - l);
  }

  void build(std::size_t u, std::size_t l, std::size_t r) {
    Node& nd = nodes_[u];
    nd.x0 = nd.y0 = static_cast<int>(size());
    nd.x1 = nd.y1 = -1;
    for (std::size_t k = l; k < r; ++k) {
      auto id = order_[k];
      nd.x0 = std::min(nd.x0, rx_[id]);
      nd.x1 = std::max(nd.x1, rx_[id]);
      nd.y0 = std::min(nd.y0, ry_[id]);
      nd.y1 = std::max(nd.y1, ry_[id]);
    }
    if (r - l == 1) {
      pos_[order_[l]] = l;
      return;
    }
    const bool by_x = (nd.x1 - nd.x0) >= (nd.y1 - nd.y0);
    const std::size_t mid = (l + r) / 2;
    auto key = [&](std::size_t id) {
      return by_x ? std::make_tuple(rx_[id], ry_[id], id) : std::make_tuple(ry_[id], rx_[id], id);
    };
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(l),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(r),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    build(u + 1, l, mid);
    build(right_of(u, l, mid), mid, r);
  }

  bool to_box(const Range2D<C>& r, Box& b) const {
    if (size() == 0) return false;
    b.x0 = lo_rank(xs_, r.x_lo);
    b.x1 = hi_rank(xs_, r.x_hi);
    b.y0 = lo_rank(ys_, r.y_lo);
    b.y1 = hi_rank(ys_, r.y_hi);
    return b.x0 <= b.x1 && b.y0 <= b.y1;
  }

  static int lo_rank(const std::vector<C>& vals, const Bound<C>& bd) {
    if (!bd.value) return 0;
    auto it = bd.strict ? std::upper_bound(vals.begin(), vals.end(), *bd.value)
                        : std::lower_bound(vals.begin(), vals.end(), *bd.value);
    return static_cast<int>(it - vals.begin());
  }

  static int hi_rank(const std::vector<C>& vals, const Bound<C>& bd) {
    if (!bd.value) return static_cast<int>(vals.size()) - 1;
    auto it = bd.strict ? std::lower_bound(vals.begin(), vals.end(), *bd.value)
                        : std::upper_bound(vals.begin(), vals.end(), *bd.value);
    return static_cast<int>(it - vals.begin()) - 1;
  }

  static bool disjoint(const Node& nd, const Box& b) {
    return nd.x1 < b.x0 || nd.x0 > b.x1 || nd.y1 < b.y0 || nd.y0 > b.y1;
  }
  static bool inside(const Node& nd, const Box& b) {
    return b.x0 <= nd.x0 && nd.x1 <= b.x1 && b.y0 <= nd.y0 && nd.y1 <= b.y1;
  }

  void apply_scale(Node& nd, const Scale& s, bool leaf) {
    if (!ScalarTraits<T>::is_one(s.factor)) nd.sum *= s.factor;
    nd.minz += s.zeros;
    if (leaf) return;
    if (nd.tagged) {
      if (!ScalarTraits<T>::is_one(s.factor)) nd.tag *= s.factor;
      nd.tagz += s.zeros;
    } else {
      nd.tag = s.factor;
      nd.tagz = s.zeros;
      nd.tagged = true;
    }
  }

  void push(std::size_t u, std::size_t l, std::size_t r) {
    Node& nd = nodes_[u];
    if (!nd.tagged) return;
    const std::size_t mid = (l + r) / 2;
    Scale s{nd.tag, nd.tagz};
    apply_scale(nodes_[u + 1], s, mid - l == 1);
    apply_scale(nodes_[right_of(u, l, mid)], s, r - mid == 1);
    nd.tag = T(1);
    nd.tagz = 0;
    nd.tagged = false;
  }

  void pull(std::size_t u, std::size_t l, std::size_t r) {
    const std::size_t mid = (l + r) / 2;
    const Node& a = nodes_[u + 1];
    const Node& b = nodes_[right_of(u, l, mid)];
    Node& nd = nodes_[u];
    if (a.minz < b.minz) {
      nd.minz = a.minz;
      nd.sum = a.sum;
    } else if (b.minz < a.minz) {
      nd.minz = b.minz;
      nd.sum = b.sum;
    } else {
      nd.minz = a.minz;
      nd.sum = a.sum + b.sum;
    }
  }

  T query_rec(std::size_t u, std::size_t l, std::size_t r, const Box& b) {
    const Node& nd = nodes_[u];
    if (disjoint(nd, b)) return T(0);
    if (inside(nd, b)) return nd.minz == 0 ? nd.sum : T(0);
    push(u, l, r);
    const std::size_t mid = (l + r) / 2;
    T left = query_rec(u + 1, l, mid, b);
    T right = query_rec(right_of(u, l, mid), mid, r, b);
    if (ScalarTraits<T>::is_zero(left)) return right;
    if (ScalarTraits<T>::is_zero(right)) return left;
    return left + right;
  }

  int min_zero_rec(std::size_t u, std::size_t l, std::size_t r, const Box& b) {
    const Node& nd = nodes_[u];
    if (disjoint(nd, b)) return 1 << 30;
    if (inside(nd, b)) return nd.minz;
    push(u, l, r);
    const std::size_t mid = (l + r) / 2;
    return std::min(min_zero_rec(u + 1, l, mid, b), min_zero_rec(right_of(u, l, mid), mid, r, b));
  }

  void apply_rec(std::size_t u, std::size_t l, std::size_t r, const Box& b, const Scale& s) {
    Node& nd = nodes_[u];
    if (disjoint(nd, b)) return;
    if (inside(nd, b)) {
      apply_scale(nd, s, r - l == 1);
      return;
    }
    push(u, l, r);
    const std::size_t mid = (l + r) / 2;
    apply_rec(u + 1, l, mid, b, s);
    apply_rec(right_of(u, l, mid), mid, r, b, s);
    pull(u, l, r);
  }

  void update_rec(std::size_t u, std::size_t l, std::size_t r, std::size_t p, const T& w) {
    if (r - l == 1) {
      nodes_[u].sum = w;
      nodes_[u].minz = 0;
      return;
    }
    push(u, l, r);
    const std::size_t mid = (l + r) / 2;
    if (p < mid) {
      update_rec(u + 1, l, mid, p, w);
    } else {
      update_rec(right_of(u, l, mid), mid, r, p, w);
    }
    pull(u, l, r);
  }

  T leaf_value(std::size_t u, std::size_t l, std::size_t r, std::size_t p) {
    if (r - l == 1) return nodes_[u].minz == 0 ? nodes_[u].sum : T(0);
    push(u, l, r);
    const std::size_t mid = (l + r) / 2;
    return p < mid ? leaf_value(u + 1, l, mid, p) : leaf_value(right_of(u, l, mid), mid, r, p);
  }

  std::vector<std::pair<C, C>> pts_;
  std::vector<C> xs_, ys_;
  std::vector<int> rx_, ry_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> pos_;
  std::vector<Node> nodes_;
};

/// O(m) per operation reference with the same contract.
template <class T, class C = Rational>
class NaiveStore {
 public:
  explicit NaiveStore(std::vector<std::pair<C, C>> points)
      : pts_(std::move(points)), weight_(pts_.size(), T(0)), zeros_(pts_.size(), 0) {}

  std::size_t size() const { return pts_.size(); }

  T query(const Range2D<C>& r) const {
    T total(0);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (zeros_[i] == 0 && r.contains(pts_[i].first, pts_[i].second)) total += weight_[i];
    }
    return total;
  }

  void update(std::size_t id, const T& w) {
    if (id >= size()) throw UnknownPoint("naive store: unknown point id " + std::to_string(id));
    weight_[id] = w;
    zeros_[id] = 0;
  }

  void multiply(const Range2D<C>& r, const T& delta) {
    const bool zero = ScalarTraits<T>::is_zero(delta);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (!r.contains(pts_[i].first, pts_[i].second)) continue;
      if (zero) {
        ++zeros_[i];
      } else {
        weight_[i] *= delta;
      }
    }
  }

  void divide_zero(const Range2D<C>& r) {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (r.contains(pts_[i].first, pts_[i].second) && zeros_[i] == 0) {
        throw ZeroCounterUnderflow("divide_zero over a range holding a point with zero-counter 0");
      }
    }
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (r.contains(pts_[i].first, pts_[i].second)) --zeros_[i];
    }
  }

  T weight(std::size_t id) const { return zeros_.at(id) == 0 ? weight_.at(id) : T(0); }

 private:
  std::vector<std::pair<C, C>> pts_;
  std::vector<T> weight_;
  std::vector<int> zeros_;
};

}  // namespace dominion
