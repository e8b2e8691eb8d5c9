#include "silt/field.hpp"

namespace silt {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

Field Field::prime(long p) {
    if (!is_prime(p)) throw InputError("field characteristic must be prime, got " + std::to_string(p));
    return Field{FieldKind::PrimeField, p};
}

Rat Field::canon(const Rat& x) const {
    if (kind == FieldKind::Rationals) {
        Rat y = x;
        y.canonicalize();
        return y;
    }
    // Over F_p the denominator is a unit; fold it into the numerator.
    mpz_class den = x.get_den();
    mpz_class num = x.get_num();
    mpz_class pz(p);
    mpz_class d = den % pz;
    if (d < 0) d += pz;
    if (d == 0) throw ComputeError("denominator divisible by " + std::to_string(p));
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw ComputeError("no inverse mod " + std::to_string(p));
    mpz_class r = (num % pz) * dinv % pz;
    if (r < 0) r += pz;
    return Rat(r);
}

Rat Field::inv(const Rat& a) const {
    if (is_zero(a)) throw ComputeError("division by zero");
    if (kind == FieldKind::Rationals) return canon(Rat(1) / a);
    mpz_class pz(p), n = a.get_num() % pz, r;
    if (n < 0) n += pz;
    if (mpz_invert(r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw ComputeError("no inverse mod " + std::to_string(p));
    return Rat(r);
}

Rat Field::parse(const std::string& s) const {
    Rat x;
    if (x.set_str(s, 10) != 0) throw InputError("bad scalar '" + s + "'");
    if (kind == FieldKind::Rationals && x.get_den() == 0) throw InputError("bad scalar '" + s + "'");
    return canon(x);
}

std::string Field::describe() const {
    return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(p);
}

} // namespace silt
