#include "ffcone/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffcone {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int f = 2; static_cast<long long>(f) * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// Dense polynomials over F_p, coefficients low degree first. Trailing
// zeros are allowed; degree is the last nonzero position.
using Poly = std::vector<int>;

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    return out;
}

// Remainder of a modulo a monic divisor.
Poly poly_mod(Poly a, const Poly& m, int p) {
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a)) {
        const int c = a[da];
        if (c != 0) {
            for (int i = 0; i <= dm; ++i) {
                const int k = da - dm + i;
                a[k] = ((a[k] - c * m[i]) % p + p) % p;
            }
        } else {
            a[da] = 0;
        }
    }
    a.resize(std::max(dm, 1));
    return a;
}

bool divides(const Poly& div, const Poly& target, int p) {
    const Poly r = poly_mod(target, div, p);
    return degree(r) < 0;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& f, int p) {
    const int df = degree(f);
    for (int dd = 1; dd <= df / 2; ++dd) {
        Poly div(dd + 1, 0);
        div[dd] = 1;
        // enumerate the p^dd choices of lower coefficients
        long long total = 1;
        for (int i = 0; i < dd; ++i) total *= p;
        for (long long code = 0; code < total; ++code) {
            long long c = code;
            for (int i = 0; i < dd; ++i) {
                div[i] = static_cast<int>(c % p);
                c /= p;
            }
            if (divides(div, f, p)) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(int p, int e) {
    Poly f(e + 1, 0);
    f[e] = 1;
    if (e == 1) return f;  // x itself
    long long total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        // low-degree-first lexicographic order: c0 varies slowest
        for (int i = e - 1; i >= 0; --i) {
            f[i] = static_cast<int>(c % p);
            c /= p;
        }
        if (f[0] == 0) continue;  // divisible by x
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

int index_of(const Poly& a, int p, int e) {
    int idx = 0;
    for (int i = e - 1; i >= 0; --i)
        idx = idx * p + (i < static_cast<int>(a.size()) ? a[i] : 0);
    return idx;
}

Poly poly_of(int index, int p, int e) {
    Poly a(e, 0);
    for (int i = 0; i < e; ++i) {
        a[i] = index % p;
        index /= p;
    }
    return a;
}

}  // namespace

FieldSpec FieldSpec::make(int p, int e) {
    if (p == 2) throw std::invalid_argument("EvenCharacteristic: p must be odd");
    if (!is_prime(p)) throw std::invalid_argument("NonPrime: p = " + std::to_string(p));
    if (e < 1) throw std::invalid_argument("DegreeZero: e must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("FieldTooLarge: q exceeds " + std::to_string(kMaxQ));
    }

    FieldSpec F;
    F.p_ = p;
    F.e_ = e;
    F.q_ = static_cast<int>(q);
    F.modulus_ = smallest_irreducible(p, e);

    const int n = F.q_;
    F.mul_table_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) {
        const Poly pa = poly_of(a, p, e);
        for (int b = a; b < n; ++b) {
            const Poly pb = poly_of(b, p, e);
            const int ab = index_of(poly_mod(poly_mul(pa, pb, p), F.modulus_, p), p, e);
            F.mul_table_[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(ab);
            F.mul_table_[static_cast<std::size_t>(b) * n + a] = static_cast<std::uint16_t>(ab);
        }
    }

    F.inv_table_.assign(n, 0);
    for (int a = 1; a < n; ++a) {
        if (F.inv_table_[a] != 0) continue;
        for (int b = 1; b < n; ++b) {
            if (F.mul(a, b) == 1) {
                F.inv_table_[a] = static_cast<std::uint16_t>(b);
                F.inv_table_[b] = static_cast<std::uint16_t>(a);
                break;
            }
        }
        if (F.inv_table_[a] == 0)
            throw std::logic_error("element without inverse; modulus not irreducible?");
    }

    F.trace_table_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int acc = 0;
        int frob = a;
        for (int i = 0; i < e; ++i) {
            acc = F.add(acc, frob);
            frob = F.pow(frob, p);
        }
        // the trace lies in the prime subfield, i.e. acc < p
        if (acc >= p) throw std::logic_error("trace left the prime subfield");
        F.trace_table_[a] = static_cast<std::uint8_t>(acc);
    }

    F.eta_table_.assign(n, -1);
    F.eta_table_[0] = 0;
    for (int a = 1; a < n; ++a) F.eta_table_[F.mul(a, a)] = 1;

    // Trace-form Gram matrix on the monomial basis and the induced
    // coefficient-space permutation xi -> T xi. Basis element x^i has
    // index p^i.
    std::vector<int> gram(static_cast<std::size_t>(e) * e);
    for (int i = 0; i < e; ++i) {
        long long pi = 1;
        for (int k = 0; k < i; ++k) pi *= p;
        for (int j = 0; j < e; ++j) {
            long long pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            gram[static_cast<std::size_t>(i) * e + j] =
                F.trace(F.mul(static_cast<int>(pi), static_cast<int>(pj)));
        }
    }
    F.dual_perm_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        const Poly xi = poly_of(a, p, e);
        Poly tx(e, 0);
        for (int i = 0; i < e; ++i) {
            int s = 0;
            for (int j = 0; j < e; ++j) s += gram[static_cast<std::size_t>(i) * e + j] * xi[j];
            tx[i] = s % p;
        }
        F.dual_perm_[a] = static_cast<std::uint16_t>(index_of(tx, p, e));
    }
    // the trace form is nondegenerate, so the map is a bijection
    {
        std::vector<char> seen(n, 0);
        for (int a = 0; a < n; ++a) seen[F.dual_perm_[a]] = 1;
        for (int a = 0; a < n; ++a)
            if (!seen[a]) throw std::logic_error("degenerate trace form");
    }

    return F;
}

int FieldSpec::add(int a, int b) const {
    if (e_ == 1) return (a + b) % p_;
    int out = 0;
    int scale = 1;
    for (int i = 0; i < e_; ++i) {
        out += ((a % p_) + (b % p_)) % p_ * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

int FieldSpec::neg(int a) const {
    if (e_ == 1) return (p_ - a) % p_;
    int out = 0;
    int scale = 1;
    for (int i = 0; i < e_; ++i) {
        out += (p_ - a % p_) % p_ * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

int FieldSpec::sub(int a, int b) const { return add(a, neg(b)); }

int FieldSpec::inv(int a) const {
    if (a == 0) throw std::domain_error("DivisionByZero: inv(0)");
    return inv_table_[a];
}

int FieldSpec::pow(int a, long long n) const {
    if (n < 0) return pow(inv(a), -n);
    int out = 1;
    int base = a;
    while (n > 0) {
        if (n & 1) out = mul(out, base);
        base = mul(base, base);
        n >>= 1;
    }
    return out;
}

int FieldSpec::from_int(long long n) const {
    const int r = static_cast<int>(((n % p_) + p_) % p_);
    return r;
}

std::vector<int> FieldSpec::digits(int a) const {
    std::vector<int> out(e_);
    for (int i = 0; i < e_; ++i) {
        out[i] = a % p_;
        a /= p_;
    }
    return out;
}

std::uint64_t point_count(const FieldSpec& field, int d) {
    if (d < 1) throw std::invalid_argument("DimensionTooSmall: d must be >= 1");
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) {
        n *= static_cast<std::uint64_t>(field.q());
        if (n > kMaxPoints) throw std::overflow_error("Overflow: q^d exceeds the configured limit");
    }
    return n;
}

std::uint64_t encode_point(const FieldSpec& field, std::span<const int> coords) {
    std::uint64_t idx = 0;
    for (std::size_t i = coords.size(); i-- > 0;)
        idx = idx * field.q() + static_cast<std::uint64_t>(coords[i]);
    return idx;
}

std::vector<int> decode_point(const FieldSpec& field, int d, std::uint64_t index) {
    std::vector<int> out(d);
    for (int i = 0; i < d; ++i) {
        out[i] = static_cast<int>(index % field.q());
        index /= field.q();
    }
    return out;
}

int cone_form(const FieldSpec& field, std::span<const int> x) {
    const int d = static_cast<int>(x.size());
    if (d < 3) throw std::invalid_argument("DimensionTooSmall: cone needs d >= 3");
    int s = 0;
    for (int i = 0; i < d - 2; ++i) s = field.add(s, field.mul(x[i], x[i]));
    return field.sub(s, field.mul(x[d - 2], x[d - 1]));
}

bool cone_contains(const FieldSpec& field, std::span<const int> x) {
    return cone_form(field, x) == 0;
}

int gamma_form(const FieldSpec& field, std::span<const int> xi) {
    const int d = static_cast<int>(xi.size());
    if (d < 3) throw std::invalid_argument("DimensionTooSmall: Gamma needs d >= 3");
    int s = 0;
    for (int i = 0; i < d - 2; ++i) s = field.add(s, field.mul(xi[i], xi[i]));
    const int four = field.from_int(4);
    return field.sub(s, field.mul(four, field.mul(xi[d - 2], xi[d - 1])));
}

std::pair<int, int> factor_prime_power(int q) {
    if (q < 3) throw std::invalid_argument("NotPrimePower: q = " + std::to_string(q));
    int p = 0;
    for (int f = 2; f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    int e = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw std::invalid_argument("NotPrimePower: q = " + std::to_string(q));
    if (p == 2) throw std::invalid_argument("EvenCharacteristic: q = " + std::to_string(q));
    return {p, e};
}

}  // namespace ffcone
