#include "cesaro/group.hpp"

#include <limits>
#include <sstream>

#include "cesaro/errors.hpp"

namespace cesaro {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::structural: return "structural error";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::resource: return "resource error";
        case ErrorKind::parameter: return "parameter error";
        case ErrorKind::validation: return "validation error";
        case ErrorKind::compatibility: return "compatibility error";
        case ErrorKind::not_a_subgroup: return "not-a-subgroup error";
        case ErrorKind::non_surjective: return "non-surjective error";
        case ErrorKind::not_irreducible: return "not-irreducible error";
        case ErrorKind::precondition: return "precondition error";
    }
    return "error";
}

std::string to_string(const GroupElement& g) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.residues.size(); ++i) {
        if (i) os << ':';
        os << g.residues[i];
    }
    return os.str();
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;
}

GroupSpec::GroupSpec(std::uint32_t p, std::vector<std::uint32_t> exponents)
    : p_(p), exponents_(std::move(exponents)) {
    if (!is_prime(p_)) fail(ErrorKind::domain, "group prime " + std::to_string(p_) + " is not prime");
    if (exponents_.empty()) fail(ErrorKind::domain, "group needs at least one cyclic factor");
    for (auto e : exponents_) {
        if (e == 0) fail(ErrorKind::domain, "cyclic factor exponents must be >= 1");
        std::uint64_t mod = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (mod > kMaxOrder / p_) fail(ErrorKind::resource, "cyclic factor too large");
            mod *= p_;
        }
        if (order_ > kMaxOrder / mod) fail(ErrorKind::resource, "group order too large");
        order_ *= mod;
        moduli_.push_back(mod);
        if (e > s_) {
            s_ = e;
            torsion_ = mod;
        }
    }
}

GroupElement GroupSpec::zero() const { return GroupElement{std::vector<std::uint32_t>(rank(), 0)}; }

bool GroupSpec::contains(const GroupElement& g) const noexcept {
    if (g.residues.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (g.residues[i] >= moduli_[i]) return false;
    return true;
}

void GroupSpec::require_member(const GroupElement& g) const {
    if (!contains(g)) fail(ErrorKind::structural, "element " + to_string(g) + " does not conform to the group");
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
    require_member(a);
    require_member(b);
    GroupElement out = a;
    for (std::size_t i = 0; i < rank(); ++i)
        out.residues[i] = static_cast<std::uint32_t>((std::uint64_t{a.residues[i]} + b.residues[i]) % moduli_[i]);
    return out;
}

GroupElement GroupSpec::neg(const GroupElement& g) const {
    require_member(g);
    GroupElement out = g;
    for (std::size_t i = 0; i < rank(); ++i)
        out.residues[i] = static_cast<std::uint32_t>((moduli_[i] - g.residues[i]) % moduli_[i]);
    return out;
}

GroupElement GroupSpec::scalar_mul(std::int64_t c, const GroupElement& g) const {
    require_member(g);
    const auto t = static_cast<std::int64_t>(torsion_);
    const auto cr = static_cast<std::uint64_t>(((c % t) + t) % t);
    GroupElement out = g;
    for (std::size_t i = 0; i < rank(); ++i)
        out.residues[i] = static_cast<std::uint32_t>((cr % moduli_[i]) * g.residues[i] % moduli_[i]);
    return out;
}

Symbol GroupSpec::index_of(const GroupElement& g) const {
    require_member(g);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx = idx * moduli_[i] + g.residues[i];
    return static_cast<Symbol>(idx);
}

GroupElement GroupSpec::element_at(Symbol index) const {
    if (index >= order_) fail(ErrorKind::domain, "element index out of range");
    GroupElement out = zero();
    std::uint64_t rest = index;
    for (std::size_t i = rank(); i-- > 0;) {
        out.residues[i] = static_cast<std::uint32_t>(rest % moduli_[i]);
        rest /= moduli_[i];
    }
    return out;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, std::uint64_t cap) {
    if (spec.order() > cap)
        fail(ErrorKind::resource, "group order " + std::to_string(spec.order()) + " exceeds enumeration cap");
    std::vector<GroupElement> out;
    out.reserve(spec.order());
    for (std::uint64_t i = 0; i < spec.order(); ++i) out.push_back(spec.element_at(static_cast<Symbol>(i)));
    return out;
}

std::uint64_t unit_inverse(std::int64_t c, std::uint32_t p, std::uint32_t s) {
    if (!is_prime(p)) fail(ErrorKind::domain, "modulus base is not prime");
    std::int64_t q = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        if (q > std::numeric_limits<std::int64_t>::max() / p) fail(ErrorKind::domain, "p^s overflows");
        q *= p;
    }
    std::int64_t a = ((c % q) + q) % q;
    if (a % p == 0) fail(ErrorKind::domain, std::to_string(c) + " is not a unit mod " + std::to_string(q));
    // Extended Euclid on (a, q); invariant: old_s * a == old_r (mod q).
    std::int64_t old_r = a, r = q, old_s = 1, t = 0;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        std::int64_t tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * t;
        old_s = t;
        t = tmp;
    }
    return static_cast<std::uint64_t>(((old_s % q) + q) % q);
}

GroupTable::GroupTable(const GroupSpec& spec) : order_(spec.order()) {
    if (order_ > 4096) fail(ErrorKind::resource, "group order above 4096 is outside the indexed-table range");
    const auto elems = enumerate_elements(spec);
    add_.resize(order_ * order_);
    neg_.resize(order_);
    for (std::size_t a = 0; a < order_; ++a) {
        neg_[a] = spec.index_of(spec.neg(elems[a]));
        for (std::size_t b = 0; b < order_; ++b) add_[a * order_ + b] = spec.index_of(spec.add(elems[a], elems[b]));
    }
    const std::uint64_t t = spec.torsion();
    scale_.resize(t * order_);
    for (std::uint64_t c = 0; c < t; ++c)
        for (std::size_t a = 0; a < order_; ++a)
            scale_[c * order_ + a] = spec.index_of(spec.scalar_mul(static_cast<std::int64_t>(c), elems[a]));
}

}  // namespace cesaro
