#pragma once

// Post-quantum status order and its lattice operators.
//
// A status is one of four totally ordered levels plus the mechanism that put
// it there. Ordering looks at the level only; the mechanism is carried along
// so reports can tell a Grover-reduced cipher (rendered with a dagger) from a
// Shor-broken key exchange at the same level.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pqposture {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Level : std::uint8_t {
  CUnsafe = 0,
  QUnsafe = 1,
  QWeakened = 2,
  QSafe = 3,
};

inline constexpr std::array<Level, 4> kAllLevels = {
    Level::CUnsafe, Level::QUnsafe, Level::QWeakened, Level::QSafe};

// Numeric value doubles as severity rank: classical > shor > grover > none.
enum class Mechanism : std::uint8_t {
  None = 0,
  Grover = 1,
  Shor = 2,
  Classical = 3,
};

constexpr int severity(Mechanism m) noexcept { return static_cast<int>(m); }

constexpr std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::CUnsafe:   return "C-Unsafe";
    case Level::QUnsafe:   return "Q-Unsafe";
    case Level::QWeakened: return "Q-Weakened";
    case Level::QSafe:     return "Q-Safe";
  }
  return "?";
}

constexpr std::string_view to_string(Mechanism m) noexcept {
  switch (m) {
    case Mechanism::None:      return "none";
    case Mechanism::Grover:    return "grover";
    case Mechanism::Shor:      return "shor";
    case Mechanism::Classical: return "classical";
  }
  return "?";
}

inline std::optional<Level> parse_level(std::string_view text) noexcept {
  for (Level l : kAllLevels)
    if (to_string(l) == text) return l;
  return std::nullopt;
}

inline std::optional<Mechanism> parse_mechanism(std::string_view text) noexcept {
  for (Mechanism m : {Mechanism::None, Mechanism::Grover, Mechanism::Shor,
                      Mechanism::Classical})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

// Whether (level, mechanism) is one of the five admissible combinations.
constexpr bool is_valid(Level level, Mechanism m) noexcept {
  switch (level) {
    case Level::QSafe:     return m == Mechanism::None;
    case Level::QWeakened: return m == Mechanism::Grover;
    case Level::QUnsafe:   return m == Mechanism::Shor || m == Mechanism::Grover;
    case Level::CUnsafe:   return m == Mechanism::Classical;
  }
  return false;
}

class Status {
 public:
  static constexpr Status q_safe() noexcept { return {Level::QSafe, Mechanism::None}; }
  static constexpr Status q_weakened() noexcept { return {Level::QWeakened, Mechanism::Grover}; }
  static constexpr Status q_unsafe() noexcept { return {Level::QUnsafe, Mechanism::Shor}; }
  // Q-Unsafe reached through Grover (residual <= 64 bits); renders with a dagger.
  static constexpr Status q_unsafe_grover() noexcept { return {Level::QUnsafe, Mechanism::Grover}; }
  static constexpr Status c_unsafe() noexcept { return {Level::CUnsafe, Mechanism::Classical}; }

  static constexpr Status bottom() noexcept { return c_unsafe(); }
  static constexpr Status top() noexcept { return q_safe(); }

  // Canonical status for a level; Q-Unsafe defaults to the Shor mechanism.
  static constexpr Status of(Level level) noexcept {
    switch (level) {
      case Level::CUnsafe:   return c_unsafe();
      case Level::QUnsafe:   return q_unsafe();
      case Level::QWeakened: return q_weakened();
      case Level::QSafe:     return q_safe();
    }
    return c_unsafe();
  }

  static Status make(Level level, Mechanism m) {
    if (!is_valid(level, m))
      throw Error("invalid status: level " + std::string(to_string(level)) +
                  " cannot carry mechanism " + std::string(to_string(m)));
    return {level, m};
  }

  constexpr Level level() const noexcept { return level_; }
  constexpr Mechanism mechanism() const noexcept { return mechanism_; }
  constexpr bool daggered() const noexcept {
    return level_ == Level::QUnsafe && mechanism_ == Mechanism::Grover;
  }
  constexpr bool is_safe() const noexcept { return level_ == Level::QSafe; }

  // Structural equality: level and mechanism. Use compare() for the order.
  friend constexpr bool operator==(const Status&, const Status&) = default;

 private:
  constexpr Status(Level level, Mechanism m) noexcept : level_(level), mechanism_(m) {}

  Level level_;
  Mechanism mechanism_;
};

inline constexpr std::array<Status, 5> kAllStatuses = {
    Status::c_unsafe(), Status::q_unsafe(), Status::q_unsafe_grover(),
    Status::q_weakened(), Status::q_safe()};

// Total preorder on statuses: level only, mechanism never participates.
constexpr std::strong_ordering compare(Level a, Level b) noexcept {
  return static_cast<int>(a) <=> static_cast<int>(b);
}
constexpr std::weak_ordering compare(const Status& a, const Status& b) noexcept {
  return static_cast<int>(a.level()) <=> static_cast<int>(b.level());
}

namespace detail {

constexpr Status pick_extreme(const Status& a, const Status& b, bool upper) noexcept {
  const auto order = compare(a, b);
  if (order == 0)
    return severity(a.mechanism()) >= severity(b.mechanism()) ? a : b;
  if (upper) return order > 0 ? a : b;
  return order < 0 ? a : b;
}

}  // namespace detail

// Least upper bound (max level). At equal level the more severe mechanism wins,
// so a dagger is dropped when it meets a Shor-broken status.
constexpr Status join(const Status& a, const Status& b) noexcept {
  return detail::pick_extreme(a, b, /*upper=*/true);
}

// Greatest lower bound (min level), same tie-break as join.
constexpr Status meet(const Status& a, const Status& b) noexcept {
  return detail::pick_extreme(a, b, /*upper=*/false);
}

constexpr Level join(Level a, Level b) noexcept { return a < b ? b : a; }
constexpr Level meet(Level a, Level b) noexcept { return a < b ? a : b; }

inline std::string to_string(const Status& s) {
  std::string out(to_string(s.level()));
  if (s.daggered()) out += "†";
  return out;
}

// Accepts the canonical renders: "C-Unsafe", "Q-Unsafe", "Q-Unsafe†",
// "Q-Weakened", "Q-Safe".
inline std::optional<Status> parse_status(std::string_view text) noexcept {
  for (const Status& s : kAllStatuses)
    if (to_string(s) == text) return s;
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, Level l) { return os << to_string(l); }
inline std::ostream& operator<<(std::ostream& os, Mechanism m) { return os << to_string(m); }
inline std::ostream& operator<<(std::ostream& os, const Status& s) { return os << to_string(s); }

}  // namespace pqposture
