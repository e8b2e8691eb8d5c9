#pragma once

#include <gmpxx.h>

#include <string>

#include "silt/errors.hpp"

namespace silt {

/// Exact field scalar. Rationals are kept in lowest terms by GMP;
/// prime-field elements are least non-negative residues with denominator 1.
using Rat = mpq_class;

enum class FieldKind { Rationals, PrimeField };

/// Coefficient field: the rationals, or F_p for a prime p.
/// All arithmetic in the library goes through these methods so a single
/// matrix/algebra code path serves both fields.
struct Field {
    FieldKind kind = FieldKind::Rationals;
    long p = 0;

    static Field rationals() { return Field{FieldKind::Rationals, 0}; }
    static Field prime(long p);

    bool operator==(const Field&) const = default;

    /// Canonical form: lowest terms over Q, least residue over F_p.
    Rat canon(const Rat& x) const;

    Rat add(const Rat& a, const Rat& b) const { return canon(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return canon(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return canon(a * b); }
    Rat neg(const Rat& a) const { return canon(-a); }
    Rat inv(const Rat& a) const;
    Rat div(const Rat& a, const Rat& b) const { return mul(a, inv(b)); }

    bool is_zero(const Rat& a) const { return sgn(a) == 0; }
    bool is_one(const Rat& a) const { return a == 1; }

    Rat from_long(long n) const { return canon(Rat(n)); }

    /// Parses "3", "-2/5" (and for F_p any integer, reduced).
    Rat parse(const std::string& s) const;
    static std::string to_string(const Rat& x) { return x.get_str(); }

    std::string describe() const;
};

} // namespace silt
