#include "risklens/set_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risklens {

namespace {

void check_component(const SetComponent& c) {
  if (!std::isfinite(c.lo) || !std::isfinite(c.hi))
    throw std::invalid_argument("SetDescriptor: endpoints must be finite");
  if (c.lo > c.hi) throw std::invalid_argument("SetDescriptor: component with lo > hi");
  if (c.lo == c.hi && !(c.closed_lo && c.closed_hi))
    throw std::invalid_argument("SetDescriptor: degenerate open component is empty");
}

bool touch_merges(const SetComponent& a, const SetComponent& b) {
  // a.lo <= b.lo after sorting
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.closed_hi || b.closed_lo;
  return false;
}

}  // namespace

SetDescriptor::SetDescriptor(std::vector<SetComponent> parts) : parts_(std::move(parts)) {
  for (const auto& c : parts_) check_component(c);
  normalize();
}

void SetDescriptor::normalize() {
  if (parts_.empty()) return;
  std::sort(parts_.begin(), parts_.end(), [](const SetComponent& a, const SetComponent& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.closed_lo && !b.closed_lo;
  });
  std::vector<SetComponent> merged;
  merged.push_back(parts_.front());
  for (std::size_t i = 1; i < parts_.size(); ++i) {
    SetComponent& prev = merged.back();
    const SetComponent& cur = parts_[i];
    if (touch_merges(prev, cur)) {
      if (cur.hi > prev.hi) {
        prev.hi = cur.hi;
        prev.closed_hi = cur.closed_hi;
      } else if (cur.hi == prev.hi) {
        prev.closed_hi = prev.closed_hi || cur.closed_hi;
      }
      if (cur.lo == prev.lo) prev.closed_lo = prev.closed_lo || cur.closed_lo;
    } else {
      merged.push_back(cur);
    }
  }
  parts_ = std::move(merged);
}

SetDescriptor SetDescriptor::point(double a) { return SetDescriptor({SetComponent{a, a, true, true}}); }

SetDescriptor SetDescriptor::interval(double lo, double hi, bool closed_lo, bool closed_hi) {
  return SetDescriptor({SetComponent{lo, hi, closed_lo, closed_hi}});
}

SetDescriptor SetDescriptor::finite(std::vector<double> points) {
  std::vector<SetComponent> parts;
  parts.reserve(points.size());
  for (double p : points) parts.push_back(SetComponent{p, p, true, true});
  return SetDescriptor(std::move(parts));
}

bool SetDescriptor::contains(double x) const {
  for (const auto& c : parts_) {
    if (x < c.lo || x > c.hi) continue;
    if (x == c.lo && !c.closed_lo) continue;
    if (x == c.hi && !c.closed_hi) continue;
    return true;
  }
  return false;
}

bool SetDescriptor::contains_open_interval(double a, double b) const {
  if (a >= b) return true;  // empty interval
  for (const auto& c : parts_) {
    if (c.lo <= a && b <= c.hi) return true;
  }
  return false;
}

double SetDescriptor::inf() const {
  if (parts_.empty()) throw std::domain_error("SetDescriptor: inf of empty set");
  return parts_.front().lo;
}

double SetDescriptor::sup() const {
  if (parts_.empty()) throw std::domain_error("SetDescriptor: sup of empty set");
  return parts_.back().hi;
}

bool SetDescriptor::inf_attained() const { return !parts_.empty() && parts_.front().closed_lo; }

bool SetDescriptor::sup_attained() const { return !parts_.empty() && parts_.back().closed_hi; }

SetDescriptor SetDescriptor::convex_hull() const {
  if (parts_.empty()) return SetDescriptor();
  return SetDescriptor(
      {SetComponent{inf(), sup(), inf_attained(), sup_attained()}});
}

SetDescriptor SetDescriptor::closure() const {
  std::vector<SetComponent> parts = parts_;
  for (auto& c : parts) c.closed_lo = c.closed_hi = true;
  return SetDescriptor(std::move(parts));
}

SetDescriptor SetDescriptor::remove_point(double a) const {
  if (!contains(a)) return *this;
  std::vector<SetComponent> parts;
  for (const auto& c : parts_) {
    if (a < c.lo || a > c.hi || (a == c.lo && !c.closed_lo) || (a == c.hi && !c.closed_hi)) {
      parts.push_back(c);
      continue;
    }
    if (c.is_point()) continue;  // drop the singleton
    if (a == c.lo) {
      parts.push_back(SetComponent{c.lo, c.hi, false, c.closed_hi});
    } else if (a == c.hi) {
      parts.push_back(SetComponent{c.lo, c.hi, c.closed_lo, false});
    } else {
      parts.push_back(SetComponent{c.lo, a, c.closed_lo, false});
      parts.push_back(SetComponent{a, c.hi, false, c.closed_hi});
    }
  }
  return SetDescriptor(std::move(parts));
}

bool SetDescriptor::operator==(const SetDescriptor& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[i];
    if (a.lo != b.lo || a.hi != b.hi || a.closed_lo != b.closed_lo || a.closed_hi != b.closed_hi)
      return false;
  }
  return true;
}

SetDescriptor cotwo(const SetDescriptor& a) {
  if (a.empty()) throw std::domain_error("cotwo: empty set");
  const double m1 = a.inf();
  const SetDescriptor rest = a.remove_point(m1);
  if (!rest.empty()) {
    const double m2 = rest.inf();
    if (m1 < m2 && !a.contains(m2)) {
      std::vector<SetComponent> parts = rest.convex_hull().parts();
      parts.push_back(SetComponent{m1, m1, true, true});
      return SetDescriptor(std::move(parts));
    }
  }
  return a.convex_hull();
}

double inftwo(const SetDescriptor& a) {
  if (a.empty()) throw std::domain_error("inftwo: empty set");
  const double m1 = a.inf();
  const SetDescriptor rest = a.remove_point(m1);
  if (!rest.empty()) {
    const double m2 = rest.inf();
    if (m1 < m2 && !a.contains(m2)) return m2;
  }
  return m1;
}

}  // namespace risklens
