#ifndef RISKLENS_SET_DESCRIPTOR_HPP
#define RISKLENS_SET_DESCRIPTOR_HPP

#include <vector>

namespace risklens {

// One maximal component of a finite union of points and intervals.
// A point is encoded as lo == hi with both ends closed.
struct SetComponent {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_lo = true;
  bool closed_hi = true;

  bool is_point() const { return lo == hi; }
};

// A finite union of points and bounded intervals on the real line, kept
// normalized: components sorted, pairwise disjoint, touching components
// merged when compatible. Unboundedness never appears here; it is modeled
// at the extended-CDF level.
class SetDescriptor {
 public:
  SetDescriptor() = default;  // empty set
  explicit SetDescriptor(std::vector<SetComponent> parts);

  static SetDescriptor point(double a);
  static SetDescriptor interval(double lo, double hi, bool closed_lo, bool closed_hi);
  static SetDescriptor finite(std::vector<double> points);

  bool empty() const { return parts_.empty(); }
  const std::vector<SetComponent>& parts() const { return parts_; }

  bool contains(double x) const;
  bool contains_open_interval(double a, double b) const;  // (a,b) subset of this?

  double inf() const;  // throws on empty
  double sup() const;
  bool inf_attained() const;
  bool sup_attained() const;

  SetDescriptor convex_hull() const;            // co(A)
  SetDescriptor closure() const;                // cl(A)
  SetDescriptor remove_point(double a) const;   // A \ {a}

  bool operator==(const SetDescriptor& other) const;

 private:
  std::vector<SetComponent> parts_;
  void normalize();
};

// Modified convex hull that keeps an isolated worst point separate:
//   co(A \ {inf A}) u {inf A}   when inf A < inf(A \ {inf A}) and the latter
//                               does not belong to A,
//   co(A)                       otherwise.
SetDescriptor cotwo(const SetDescriptor& a);

// inf(A \ {inf A}) in the first branch above, inf A otherwise.
double inftwo(const SetDescriptor& a);

}  // namespace risklens

#endif
