#pragma once

#include <cassert>
#include <cstdint>
#include <ostream>
#include <string>

namespace ionet {

using Count = std::uint32_t;

/// Natural number extended with the top element omega.
///
/// All omega arithmetic lives here: omega + k = omega, omega - k = omega,
/// and n < omega for every finite n. Subtraction below zero is a programming
/// error and is guarded by assertions; callers test first.
class ExtNat {
public:
  constexpr ExtNat() : fin_(0), omega_(false) {}
  constexpr explicit ExtNat(Count n) : fin_(n), omega_(false) {}

  static constexpr ExtNat omega() { return ExtNat(0, true); }
  static constexpr ExtNat finite(Count n) { return ExtNat(n, false); }

  constexpr bool is_omega() const { return omega_; }
  constexpr bool is_finite() const { return !omega_; }

  constexpr Count value() const {
    assert(!omega_);
    return fin_;
  }

  constexpr ExtNat plus(Count k) const {
    return omega_ ? *this : ExtNat(fin_ + k);
  }

  // omega - k = omega; finite values must stay nonnegative.
  constexpr ExtNat minus(Count k) const {
    if (omega_) return *this;
    assert(fin_ >= k);
    return ExtNat(fin_ - k);
  }

  friend constexpr bool operator==(ExtNat a, ExtNat b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.fin_ == b.fin_);
  }
  friend constexpr bool operator!=(ExtNat a, ExtNat b) { return !(a == b); }
  friend constexpr bool operator<(ExtNat a, ExtNat b) {
    if (a.omega_) return false;
    if (b.omega_) return true;
    return a.fin_ < b.fin_;
  }
  friend constexpr bool operator<=(ExtNat a, ExtNat b) { return !(b < a); }
  friend constexpr bool operator>(ExtNat a, ExtNat b) { return b < a; }
  friend constexpr bool operator>=(ExtNat a, ExtNat b) { return !(a < b); }

  friend constexpr bool operator<(Count n, ExtNat b) { return ExtNat(n) < b; }
  friend constexpr bool operator<=(Count n, ExtNat b) { return ExtNat(n) <= b; }
  friend constexpr ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }
  friend constexpr ExtNat max(ExtNat a, ExtNat b) { return a < b ? b : a; }

  std::string str() const { return omega_ ? "w" : std::to_string(fin_); }

  friend std::ostream& operator<<(std::ostream& os, ExtNat v) {
    return os << v.str();
  }

private:
  constexpr ExtNat(Count n, bool om) : fin_(n), omega_(om) {}

  Count fin_;
  bool omega_;
};

}  // namespace ionet
