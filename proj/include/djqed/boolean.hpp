// Copyright 2026 The djqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace djqed {

inline constexpr int kMaxBits = 6;

/// Boolean function on n bits. Entry i is f evaluated at the input whose
/// binary expansion is i, with x1 as the most significant bit, so for n = 3
/// index 0b110 means x1 = 1, x2 = 1, x3 = 0.
class TruthTable {
 public:
  TruthTable(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n < 1 || n > kMaxBits) {
      throw std::invalid_argument("TruthTable: n must be in [1, 6]");
    }
    if (size() < 64 && (bits >> size()) != 0) {
      throw std::invalid_argument("TruthTable: bits beyond 2^n entries are set");
    }
  }

  static TruthTable from_values(const std::vector<int>& values) {
    int n = std::countr_zero(values.size());
    if (values.empty() || !std::has_single_bit(values.size()) || n < 1 || n > kMaxBits) {
      throw std::invalid_argument("TruthTable: length must be 2^n with 1 <= n <= 6");
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] != 0 && values[i] != 1) {
        throw std::invalid_argument("TruthTable: values must be 0 or 1");
      }
      bits |= static_cast<std::uint64_t>(values[i]) << i;
    }
    return TruthTable(n, bits);
  }

  /// Parses "00010111": character i is f at input index i.
  static TruthTable parse(std::string_view text) {
    std::vector<int> values;
    values.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("truth table must contain only '0' and '1': \"" +
                                    std::string(text) + "\"");
      }
      values.push_back(c - '0');
    }
    return from_values(values);
  }

  int n() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  std::uint64_t bits() const { return bits_; }

  int operator[](std::size_t input) const { return static_cast<int>((bits_ >> input) & 1U); }

  int weight() const { return std::popcount(bits_); }

  /// Value of variable x_var (1-based) at input index `input`.
  int variable(std::size_t input, int var) const {
    return static_cast<int>((input >> (n_ - var)) & 1U);
  }

  TruthTable complement() const {
    std::uint64_t mask = size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
    return TruthTable(n_, ~bits_ & mask);
  }

  /// The table read as an integer with entry 0 as the most significant bit;
  /// this is the order in which the string form sorts.
  std::uint64_t table_value() const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      v = (v << 1) | static_cast<std::uint64_t>((*this)[i]);
    }
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      s.push_back(static_cast<char>('0' + (*this)[i]));
    }
    return s;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::uint64_t bits_;
};

inline bool is_balanced(const TruthTable& f) {
  return static_cast<std::size_t>(f.weight()) * 2 == f.size();
}

inline bool is_constant(const TruthTable& f) {
  return f.weight() == 0 || static_cast<std::size_t>(f.weight()) == f.size();
}

/// Balanced functions with f(0...0) = 0, one per complement pair, sorted by
/// truth-table value.
inline std::vector<TruthTable> canonical_balanced_set(int n) {
  if (n < 1 || n > 4) {
    // 2^(2^5) tables is too many to enumerate here.
    throw std::invalid_argument("canonical_balanced_set: n must be in [1, 4]");
  }
  std::size_t size = std::size_t{1} << n;
  std::uint64_t count = std::uint64_t{1} << size;
  std::vector<TruthTable> out;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    TruthTable f(n, bits);
    if (f[0] == 0 && is_balanced(f)) {
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const TruthTable& a, const TruthTable& b) {
    return a.table_value() < b.table_value();
  });
  return out;
}

/// Algebraic normal form over GF(2). Monomials are bitmasks in input-index
/// bit positions: the monomial x1x3 for n = 3 is 0b101. Bit m of
/// `coefficients` is the coefficient of monomial m.
struct AnfForm {
  int n = 0;
  std::uint64_t coefficients = 0;

  int coefficient(std::uint64_t monomial) const {
    return static_cast<int>((coefficients >> monomial) & 1U);
  }

  int degree() const {
    int d = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      if (coefficient(m)) {
        d = std::max(d, std::popcount(m));
      }
    }
    return d;
  }

  /// Monomials with nonzero coefficient and exactly `deg` variables.
  std::vector<std::uint64_t> monomials_of_degree(int deg) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      if (coefficient(m) && std::popcount(m) == deg) {
        out.push_back(m);
      }
    }
    return out;
  }

  /// 1-based variable indices of a monomial, ascending.
  std::vector<int> variables(std::uint64_t monomial) const {
    std::vector<int> vars;
    for (int v = 1; v <= n; ++v) {
      if ((monomial >> (n - v)) & 1U) {
        vars.push_back(v);
      }
    }
    return vars;
  }

  /// e.g. "x1x2 ^ x1 ^ x3"; higher-degree terms first, "0" when empty.
  std::string to_string() const {
    std::vector<std::uint64_t> terms;
    for (int deg = n; deg >= 0; --deg) {
      auto ms = monomials_of_degree(deg);
      terms.insert(terms.end(), ms.rbegin(), ms.rend());
    }
    if (terms.empty()) {
      return "0";
    }
    std::string s;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (t > 0) {
        s += " ^ ";
      }
      if (terms[t] == 0) {
        s += "1";
        continue;
      }
      for (int v : variables(terms[t])) {
        s += "x" + std::to_string(v);
      }
    }
    return s;
  }

  friend bool operator==(const AnfForm&, const AnfForm&) = default;
};

namespace detail {

// In-place subset-sum butterfly over GF(2). The transform is its own inverse.
inline std::uint64_t moebius(std::uint64_t bits, int n) {
  std::size_t size = std::size_t{1} << n;
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t i = 0; i < size; ++i) {
      if (i & step) {
        bits ^= ((bits >> (i ^ step)) & 1U) << i;
      }
    }
  }
  return bits;
}

}  // namespace detail

inline AnfForm anf_of(const TruthTable& f) {
  return AnfForm{f.n(), detail::moebius(f.bits(), f.n())};
}

inline TruthTable truth_table_of(const AnfForm& anf) {
  return TruthTable(anf.n, detail::moebius(anf.coefficients, anf.n));
}

/// Diagonal of the phase oracle |x> -> (-1)^f(x) |x>.
struct OracleMatrix {
  std::vector<int> diagonal;

  std::size_t dim() const { return diagonal.size(); }
  friend bool operator==(const OracleMatrix&, const OracleMatrix&) = default;
};

inline OracleMatrix oracle_matrix(const TruthTable& f) {
  OracleMatrix m;
  m.diagonal.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    m.diagonal[i] = f[i] ? -1 : 1;
  }
  return m;
}

}  // namespace djqed
