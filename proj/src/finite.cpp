#include "wpb/finite.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

namespace wpb {

FinSet::FinSet(std::string name, std::vector<std::string> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  std::set<std::string_view> seen;
  for (const auto& e : elements_) {
    if (!seen.insert(e).second) {
      throw InputError("duplicate-element", "set '" + name_ + "' lists '" + e + "' twice");
    }
  }
}

FinSet FinSet::range(std::string name, std::size_t n, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return FinSet(std::move(name), std::move(labels));
}

std::size_t FinSet::index_of(std::string_view label) const {
  auto it = std::find(elements_.begin(), elements_.end(), label);
  if (it == elements_.end()) {
    throw InputError("unknown-element",
                     "'" + std::string(label) + "' is not an element of '" + name_ + "'");
  }
  return static_cast<std::size_t>(it - elements_.begin());
}

bool FinSet::contains(std::string_view label) const noexcept {
  return std::find(elements_.begin(), elements_.end(), label) != elements_.end();
}

Mask FinSet::full_mask() const {
  if (size() > kMaxMaskCarrier) throw SizeGuardError("carrier too large for mask encoding");
  return size() == 0 ? Mask{0} : (Mask{1} << size()) - 1;
}

// ---------------------------------------------------------------------------

namespace {

boost::multiprecision::mpz_int parse_integer(std::string_view text, std::string_view whole) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (text.size() == start) {
    throw InputError("malformed-rational", "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InputError("malformed-rational", "malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return boost::multiprecision::mpz_int(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  auto num = parse_integer(text.substr(0, slash), text);
  auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw InputError("zero-denominator", "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

bool equal(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool leq(const RationalVector& a, const RationalVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool lexicographic_less(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

bool in_unit_cube(const RationalVector& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!in_unit_interval(p[i])) return false;
  return true;
}

std::string to_string(const RationalVector& p) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += to_string(p[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

RationalVector dirac(std::size_t n, std::size_t i) {
  RationalVector v = RationalVector::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(i)] = 1;
  return v;
}

RationalVector constant(std::size_t n, const Rational& value) {
  return RationalVector::Constant(static_cast<Eigen::Index>(n), value);
}

RationalVector to_vector(Mask m, std::size_t n) {
  RationalVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = has(m, i) ? 1 : 0;
  return v;
}

Mask to_mask(const RationalVector& p) {
  Mask m = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] == 1) {
      m |= bit(static_cast<std::size_t>(i));
    } else if (p[i] != 0) {
      throw std::invalid_argument("predicate is not Boolean-valued");
    }
  }
  return m;
}

std::string bitstring(Mask m, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (has(m, i)) s[i] = '1';
  return s;
}

Mask parse_bitstring(std::string_view bits, std::size_t n) {
  if (bits.size() != n) {
    throw InputError("bad-bitstring", "bitstring '" + std::string(bits) + "' should have length " +
                                          std::to_string(n));
  }
  Mask m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] == '1') {
      m |= bit(i);
    } else if (bits[i] != '0') {
      throw InputError("bad-bitstring", "bitstring '" + std::string(bits) + "' has a non-binary digit");
    }
  }
  return m;
}

std::vector<std::size_t> members(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1)
    if (m & 1U) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(TruthCarrier c) {
  return c == TruthCarrier::Boolean ? "boolean" : "rational";
}

std::vector<Mask> enumerate_subsets(const FinSet& x) {
  if (x.size() > 30) throw SizeGuardError("refusing to enumerate 2^" + std::to_string(x.size()) + " subsets");
  std::vector<Mask> out(std::size_t{1} << x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<Mask> enumerate_predicates(const FinSet& y, TruthCarrier carrier) {
  if (carrier != TruthCarrier::Boolean) {
    throw std::invalid_argument("rational predicate spaces are infinite and cannot be enumerated");
  }
  return enumerate_subsets(y);
}

std::uint64_t transformer_count(std::size_t source_size, std::size_t target_size) {
  // (2^|X|)^(2^|Y|) = 2^(|X| * 2^|Y|)
  if (source_size >= 32) return std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 exponent = static_cast<unsigned __int128>(target_size) << source_size;
  if (exponent >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << static_cast<unsigned>(exponent);
}

TransformerStream::TransformerStream(FinSet source, FinSet target, std::uint64_t bound)
    : source_(std::move(source)), target_(std::move(target)) {
  count_ = transformer_count(source_.size(), target_.size());
  if (count_ > bound || count_ == std::numeric_limits<std::uint64_t>::max()) {
    throw SizeGuardError("transformer space 2^Y -> 2^X with |Y|=" + std::to_string(source_.size()) +
                         ", |X|=" + std::to_string(target_.size()) + " exceeds the enumeration bound " +
                         std::to_string(bound));
  }
}

void TransformerStream::decode(std::uint64_t index, std::vector<Mask>& table) const {
  const std::size_t rows = std::size_t{1} << source_.size();
  const std::size_t width = target_.size();
  const Mask digit = width == 0 ? 0 : (Mask{1} << width) - 1;
  table.resize(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    table[k] = width == 0 ? 0 : (index >> (width * k)) & digit;
  }
}

std::uint64_t TransformerStream::encode(const std::vector<Mask>& table) const {
  std::uint64_t index = 0;
  const std::size_t width = target_.size();
  for (std::size_t k = 0; k < table.size(); ++k) index |= table[k] << (width * k);
  return index;
}

void TransformerStream::for_each(
    std::uint64_t begin, std::uint64_t end,
    const std::function<bool(std::uint64_t, const std::vector<Mask>&)>& visit) const {
  std::vector<Mask> table;
  end = std::min(end, count_);
  if (begin >= end) return;
  decode(begin, table);
  const std::size_t width = target_.size();
  const Mask digit_max = width == 0 ? 0 : (Mask{1} << width) - 1;
  for (std::uint64_t i = begin; i < end; ++i) {
    if (!visit(i, table)) return;
    // increment the base-2^|X| counter in place
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k] < digit_max) {
        ++table[k];
        break;
      }
      table[k] = 0;
    }
  }
}

// ---------------------------------------------------------------------------

std::size_t Sampler::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Sampler::index on empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

bool Sampler::coin() { return index(2) == 1; }

Rational Sampler::unit_rational(unsigned max_den) {
  unsigned d = 1 + static_cast<unsigned>(index(max_den));
  unsigned k = static_cast<unsigned>(index(d + 1));
  return Rational(k, d);
}

RationalVector Sampler::predicate(std::size_t n, unsigned max_den) {
  RationalVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = unit_rational(max_den);
  return v;
}

RationalVector Sampler::subdistribution(std::size_t n, unsigned max_den, bool total) {
  if (total && n == 0) throw std::invalid_argument("no distribution on an empty carrier");
  RationalVector v = RationalVector::Zero(static_cast<Eigen::Index>(n));
  if (n == 0) return v;
  const unsigned d = 1 + static_cast<unsigned>(index(max_den));
  unsigned budget = total ? d : static_cast<unsigned>(index(d + 1));
  // scatter `budget` units of 1/d over random elements
  std::vector<unsigned> units(n, 0);
  for (unsigned u = 0; u < budget; ++u) ++units[index(n)];
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = Rational(units[i], d);
  return v;
}

}  // namespace wpb
