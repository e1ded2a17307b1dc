#include "triq/quadratic.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <vector>

namespace triq {

namespace {

std::mutex cache_mutex;
std::map<Int, QuadUnit>& unit_cache() {
    static std::map<Int, QuadUnit> cache;
    return cache;
}

QuadUnit compute_fundamental_unit(const Int& d) {
    // Expand the continued fraction of w = sqrt(d), or (1+sqrt(d))/2 when
    // d = 1 (mod 4), with exact state (P + sqrt(d))/Q.  At each convergent
    // p/q test |N(p - q*conj(w))| = 1; the first hit is the fundamental unit
    // of the maximal order.
    const bool half = (d % 4 == 1);
    Int P = half ? 1 : 0;
    Int Q = half ? 2 : 1;
    Int s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());

    Int p_prev = 1, p_prev2 = 0;  // convergent numerators
    Int q_prev = 0, q_prev2 = 1;  // convergent denominators
    const Int quarter = half ? Int((d - 1) / 4) : Int(0);

    for (long step = 0; step < 100000000; ++step) {
        if (Q <= 0) throw inconsistency_error("fundamental_unit: CF state corrupted");
        Int a = (P + s) / Q;
        Int p = a * p_prev + p_prev2;
        Int q = a * q_prev + q_prev2;

        // norm of p - q*w_bar over the relevant order
        Int n = half ? Int(p * p - p * q + q * q * (1 - d) / 4) : Int(p * p - d * q * q);
        if (n == 1 || n == -1) {
            QuadUnit u;
            u.d = d;
            u.norm = (n == 1) ? 1 : -1;
            if (half) {
                // p - q*(1-sqrt(d))/2 = (2p - q + q*sqrt(d))/2
                u.a = 2 * p - q;
                u.b = q;
                u.denom = 2;
                if (u.a % 2 == 0 && u.b % 2 == 0) {
                    u.a /= 2;
                    u.b /= 2;
                    u.denom = 1;
                }
            } else {
                u.a = p;
                u.b = q;
                u.denom = 1;
            }
            if (!u.pell_holds() || u.a <= 0 || u.b <= 0)
                throw inconsistency_error("fundamental_unit: Pell identity failed");
            return u;
        }

        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;
        Int Pn = a * Q - P;
        Int Qn = (d - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    throw inconsistency_error("fundamental_unit: period not found");
}

}  // namespace

QuadUnit fundamental_unit(const Int& d) {
    if (d <= 1 || !is_squarefree(d))
        throw precondition_error("fundamental_unit: d must be squarefree and > 1");
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = unit_cache().find(d);
        if (it != unit_cache().end()) return it->second;
    }
    QuadUnit u = compute_fundamental_unit(d);
    std::lock_guard<std::mutex> lk(cache_mutex);
    unit_cache().emplace(d, u);
    return u;
}

static const char* kCacheHeader = "triq-unit-cache 1";

std::size_t load_unit_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    std::string header;
    std::getline(in, header);
    if (header != kCacheHeader) return 0;
    std::size_t loaded = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string ds, as, bs;
        int denom, norm;
        if (!(ss >> ds >> as >> bs >> denom >> norm)) continue;
        QuadUnit u;
        try {
            u.d = Int(ds);
            u.a = Int(as);
            u.b = Int(bs);
        } catch (const std::invalid_argument&) {
            continue;
        }
        u.denom = denom;
        u.norm = norm;
        // untrusted input: accept only records passing the Pell identity
        if ((u.denom != 1 && u.denom != 2) || (u.norm != 1 && u.norm != -1)) continue;
        if (u.d <= 1 || u.a <= 0 || u.b <= 0 || !u.pell_holds()) continue;
        std::lock_guard<std::mutex> lk(cache_mutex);
        if (unit_cache().emplace(u.d, u).second) ++loaded;
    }
    return loaded;
}

std::size_t save_unit_cache(const std::string& path) {
    std::lock_guard<std::mutex> lk(cache_mutex);
    std::ofstream out(path, std::ios::trunc);
    if (!out) return 0;
    out << kCacheHeader << "\n";
    for (const auto& [d, u] : unit_cache())
        out << u.d << " " << u.a << " " << u.b << " " << u.denom << " " << u.norm << "\n";
    return unit_cache().size();
}

void clear_unit_cache() {
    std::lock_guard<std::mutex> lk(cache_mutex);
    unit_cache().clear();
}

NormSignature norm_signature(const Int& p1, const Int& p2) {
    if (p1 == p2 || !is_prime(p1) || !is_prime(p2) || p1 % 4 != 1 || p2 % 4 != 1)
        throw precondition_error("norm_signature: need distinct primes = 1 mod 4");
    NormSignature s;
    s.n1 = fundamental_unit(2 * p1).norm;
    s.n2 = fundamental_unit(2 * p2).norm;
    s.n3 = fundamental_unit(p1 * p2).norm;
    s.n4 = fundamental_unit(2 * p1 * p2).norm;
    return s;
}

namespace {

std::vector<Int> factor_squarefree(const Int& n) {
    std::vector<Int> ps;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            ps.push_back(p);
            m /= p;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

}  // namespace

std::optional<Int> h2_lemma(const Int& d) {
    if (d <= 1 || !is_squarefree(d)) return std::nullopt;
    if (d == 2) return Int(1);
    auto ps = factor_squarefree(d);
    if (ps.size() == 1) {
        if (is_prime(d) && d % 4 == 1) return Int(1);
        return std::nullopt;
    }
    if (ps.size() == 2 && ps[0] == 2) {
        const Int& p = ps[1];
        if (!is_prime(p) || p % 4 != 1) return std::nullopt;
        if (p % 8 == 5) return Int(2);
        // p = 1 (mod 8)
        int s1 = quartic_2_under_p(p), s2 = quartic_p_under_2(p);
        if (s1 != s2) return Int(2);
        if (s1 == -1) return Int(4);
        return std::nullopt;
    }
    if (ps.size() == 2) {
        const Int &p = ps[0], &q = ps[1];
        if (!is_prime(p) || !is_prime(q) || p % 4 != 1 || q % 4 != 1) return std::nullopt;
        if (legendre(p, q) == -1) return Int(2);
        return std::nullopt;
    }
    if (ps.size() == 3 && ps[0] == 2) {
        const Int &p = ps[1], &q = ps[2];
        if (!is_prime(p) || !is_prime(q) || p % 4 != 1 || q % 4 != 1) return std::nullopt;
        int minus = (legendre(p, q) == -1) + (legendre(2, p) == -1) + (legendre(2, q) == -1);
        if (minus >= 2) return Int(4);
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

Int two_part(Int h) {
    Int r = 1;
    while (h % 2 == 0) {
        r *= 2;
        h /= 2;
    }
    return r;
}

Int fundamental_discriminant(const Int& d) {
    Int m = ((d % 4) + 4) % 4;
    return m == 1 ? d : 4 * d;
}

}  // namespace

std::pair<Int, Int> class_group_imaginary(const Int& d) {
    if (d >= 0 || !is_squarefree(d))
        throw precondition_error("class_group_imaginary: d must be negative squarefree");
    const Int D = fundamental_discriminant(d);
    const Int absD = -D;
    Int h = 0;
    // reduced primitive forms (A,B,C): |B| <= A <= C, B = D (mod 2), B >= 0
    // when |B| = A or A = C
    for (Int B = mpz_tstbit(D.get_mpz_t(), 0); 3 * B * B <= absD; B += 2) {
        Int m4 = B * B + absD;  // = 4AC
        if (m4 % 4 != 0) continue;
        Int m = m4 / 4;
        for (Int A = (B > 0 ? B : Int(1)); A * A <= m; ++A) {
            if (A == 0 || m % A != 0) continue;
            Int C = m / A;
            Int g = gcd(gcd(A, B), C);
            if (g != 1) continue;
            h += (B == 0 || B == A || A == C) ? 1 : 2;
        }
    }
    return {h, two_part(h)};
}

std::pair<Int, Int> class_group_real(const Int& d, const Int& disc_bound) {
    if (d <= 1 || !is_squarefree(d))
        throw precondition_error("class_group_real: d must be squarefree > 1");
    const Int D = fundamental_discriminant(d);
    if (D > disc_bound)
        throw precondition_error("class_group_real: discriminant above oracle bound");
    Int sD;
    mpz_sqrt(sD.get_mpz_t(), D.get_mpz_t());

    using Form = std::tuple<Int, Int, Int>;
    std::set<Form> forms;
    // reduced indefinite (A,B,C): 0 < B < sqrt(D), sqrt(D)-B < 2|A| < sqrt(D)+B
    for (Int B = 2 - mpz_tstbit(D.get_mpz_t(), 0); B <= sD; B += 2) {
        Int n4 = D - B * B;  // = -4AC > 0
        if (n4 <= 0 || n4 % 4 != 0) continue;
        Int n = n4 / 4;  // = |A|*|C| with A*C = -n
        for (Int A = 1; A * A <= n; ++A) {
            if (n % A != 0) continue;
            Int C = n / A;
            for (const Int& a : {A, C}) {
                Int c = -(n / a);
                // check sqrt(D)-B < 2a < sqrt(D)+B on integers (D non-square)
                Int t = 2 * a;
                bool lower = (t - B >= 0) ? ((t - B) * (t - B) < D) : true;
                bool upper = (t + B) * (t + B) > D;
                if (lower && upper && gcd(gcd(a, B), c) == 1) {
                    forms.insert({a, B, c});
                    forms.insert({-a, B, -c});
                }
                if (A == C) break;
            }
        }
    }

    // partition into cycles under the reduction step rho
    auto rho = [&](const Form& f) -> Form {
        auto [A, B, C] = f;
        Int m = 2 * abs(C);
        Int r = sD - ((sD + B) % m + m) % m;  // r = -B (mod m), sD - m < r <= sD
        Int Cn = (r * r - D) / (4 * C);
        return {C, r, Cn};
    };
    Int cycles = 0;
    std::set<Form> seen;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        Form g = f;
        while (!seen.count(g)) {
            seen.insert(g);
            g = rho(g);
        }
    }
    Int h_narrow = cycles;
    Int h = h_narrow;
    if (fundamental_unit(d).norm == 1) {
        if (h % 2 != 0)
            throw inconsistency_error("class_group_real: narrow class number not even");
        h /= 2;
    }
    return {h, two_part(h)};
}

ClassNumber2 h2_of(const Int& d, const Int& disc_bound) {
    if (auto v = h2_lemma(d)) return {d, *v, H2Source::lemma_rule};
    Int h2 = d < 0 ? class_group_imaginary(d).second : class_group_real(d, disc_bound).second;
    return {d, h2, H2Source::form_oracle};
}

int shift_square_sign(const QuadUnit& u, const Int& t) {
    const Int s = (u.denom == 2) ? 2 : 1;
    if (is_perfect_square(t * (u.a + s))) return 1;
    if (is_perfect_square(t * (u.a - s))) return -1;
    return 0;
}

}  // namespace triq
