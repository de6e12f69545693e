// Finite carriers, exact rationals, predicates and enumeration primitives.

#ifndef WPB_FINITE_HPP
#define WPB_FINITE_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wpb {

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

/// A subset of (or Boolean predicate on) a finite carrier: bit i is element i.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxMaskCarrier = 63;

/// Error raised for malformed user input; `code` is a stable identifier.
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Raised when an enumeration would exceed its configured size bound.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named finite set with an ordered list of distinct labels. The label
/// order fixes every canonical enumeration over the set.
class FinSet {
 public:
  FinSet() = default;
  FinSet(std::string name, std::vector<std::string> elements);

  /// Carrier {0, 1, ..., n-1} with labels "<prefix><i>".
  static FinSet range(std::string name, std::size_t n, std::string_view prefix = "");

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::string& label(std::size_t i) const { return elements_.at(i); }

  /// Index of a label; throws InputError("unknown-element") when absent.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const noexcept;

  Mask full_mask() const;

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.elements_ == b.elements_;
  }

 private:
  std::string name_;
  std::vector<std::string> elements_;
};

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
bool in_unit_interval(const Rational& q);

/// Pointwise comparisons on vectors of rationals.
bool equal(const RationalVector& a, const RationalVector& b);
bool leq(const RationalVector& a, const RationalVector& b);
bool lexicographic_less(const RationalVector& a, const RationalVector& b);
bool in_unit_cube(const RationalVector& p);
std::string to_string(const RationalVector& p);

// ---------------------------------------------------------------------------
// Predicates

/// Predicate truth-set helpers. Boolean predicates are masks; rational
/// predicates are vectors indexed by element order.
RationalVector dirac(std::size_t n, std::size_t i);
RationalVector constant(std::size_t n, const Rational& value);
RationalVector to_vector(Mask m, std::size_t n);
Mask to_mask(const RationalVector& p);  // requires 0/1 entries
std::string bitstring(Mask m, std::size_t n);
Mask parse_bitstring(std::string_view bits, std::size_t n);
std::vector<std::size_t> members(Mask m);

inline bool has(Mask m, std::size_t i) { return (m >> i) & 1U; }
inline Mask bit(std::size_t i) { return Mask{1} << i; }

// ---------------------------------------------------------------------------
// Enumeration

enum class TruthCarrier { Boolean, RationalUnit };

std::string_view to_string(TruthCarrier c);

/// All 2^|X| subsets in bit-counting order (element 0 is the low bit).
std::vector<Mask> enumerate_subsets(const FinSet& x);

/// All Boolean predicates on Y in canonical order; rational carriers are
/// rejected because [0,1]^Y is infinite.
std::vector<Mask> enumerate_predicates(const FinSet& y, TruthCarrier carrier = TruthCarrier::Boolean);

inline constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 28;

/// Streams the (2^|X|)^(2^|Y|) Boolean transformers 2^Y -> 2^X as dense
/// tables: entry k of transformer i is the X-mask in base-2^|X| digit k of i.
class TransformerStream {
 public:
  TransformerStream(FinSet source, FinSet target,
                    std::uint64_t bound = kDefaultEnumerationBound);

  std::uint64_t count() const noexcept { return count_; }
  const FinSet& source() const noexcept { return source_; }
  const FinSet& target() const noexcept { return target_; }

  /// Decodes transformer `index` into `table` (resized to 2^|Y|).
  void decode(std::uint64_t index, std::vector<Mask>& table) const;
  std::uint64_t encode(const std::vector<Mask>& table) const;

  /// Visits indices [begin, end) in order, reusing a single table buffer.
  /// The visitor returns false to stop early.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<bool(std::uint64_t, const std::vector<Mask>&)>& visit) const;

 private:
  FinSet source_;
  FinSet target_;
  std::uint64_t count_ = 0;
};

/// Number of transformers between the carriers, or nullopt-like max on overflow.
std::uint64_t transformer_count(std::size_t source_size, std::size_t target_size);

// ---------------------------------------------------------------------------
// Seeded sampling

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n);  // uniform in [0, n)
  bool coin();
  /// Uniform over {k/d : 0 <= k <= d} for a random d in [1, max_den].
  Rational unit_rational(unsigned max_den);
  RationalVector predicate(std::size_t n, unsigned max_den);
  /// Subdistribution with common denominator d <= max_den; mass exactly one
  /// when `total`.
  RationalVector subdistribution(std::size_t n, unsigned max_den, bool total);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wpb

#endif  // WPB_FINITE_HPP
