#include "palfac/realnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace palfac::realnum {

namespace {

bool is_square_free(long d) {
    if (d < 1) return false;
    long n = d;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

bool subset_product_is_square(const std::vector<long>& ds, unsigned mask) {
    mpz_class prod = 1;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (mask & (1u << i)) prod *= ds[i];
    return mpz_perfect_square_p(prod.get_mpz_t()) != 0;
}

// RAII pair of directed-rounding bounds: value in [lo, hi].
struct Ivl {
    mpfr_t lo, hi;
    explicit Ivl(int prec) {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    Ivl(const Ivl&) = delete;
    Ivl& operator=(const Ivl&) = delete;
    ~Ivl() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
};

std::atomic<int> g_precision_cap{8192};

} // namespace

namespace detail {

struct FieldData {
    std::vector<long> radicands;
    // Per-basis-element radicand product: prod_{i in mask} d_i.
    std::vector<mpz_class> basis_products;

    // sqrt enclosures per precision, lazily computed. Guarded: elements are
    // immutable values shared across threads.
    mutable std::mutex cache_mutex;
    // precision -> per-mask (lo, hi) as exact dyadic rationals. Dyadic mpq
    // round-trips through mpfr without loss and keeps this header-free.
    mutable std::map<int, std::vector<std::pair<mpq_class, mpq_class>>> sqrt_cache;

    explicit FieldData(std::vector<long> ds) : radicands(std::move(ds)) {
        const int deg = 1 << radicands.size();
        basis_products.reserve(deg);
        for (int mask = 0; mask < deg; ++mask) {
            mpz_class prod = 1;
            for (std::size_t i = 0; i < radicands.size(); ++i)
                if (mask & (1 << i)) prod *= radicands[i];
            basis_products.push_back(prod);
        }
    }

    // Enclosures of sqrt(basis_products[mask]) at the given precision.
    const std::vector<std::pair<mpq_class, mpq_class>>& sqrt_bounds(int prec) const {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = sqrt_cache.find(prec);
        if (it != sqrt_cache.end()) return it->second;

        std::vector<std::pair<mpq_class, mpq_class>> bounds;
        bounds.reserve(basis_products.size());
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpq_class qlo, qhi;
        for (const mpz_class& m : basis_products) {
            mpfr_set_z(lo, m.get_mpz_t(), MPFR_RNDD);
            mpfr_sqrt(lo, lo, MPFR_RNDD);
            mpfr_set_z(hi, m.get_mpz_t(), MPFR_RNDU);
            mpfr_sqrt(hi, hi, MPFR_RNDU);
            mpfr_get_q(qlo.get_mpq_t(), lo);
            mpfr_get_q(qhi.get_mpq_t(), hi);
            bounds.emplace_back(qlo, qhi);
        }
        mpfr_clear(lo);
        mpfr_clear(hi);
        return sqrt_cache.emplace(prec, std::move(bounds)).first->second;
    }
};

} // namespace detail

// ---- FieldSpec ----

namespace {
const std::shared_ptr<const detail::FieldData>& rational_field_data() {
    static const auto data = std::make_shared<const detail::FieldData>(std::vector<long>{});
    return data;
}
} // namespace

FieldSpec::FieldSpec() : data_(rational_field_data()) {}

FieldSpec::FieldSpec(std::vector<long> radicands) {
    std::sort(radicands.begin(), radicands.end());
    if (radicands.size() > 3)
        throw InvalidSpec("FieldSpec supports at most 3 radicands");
    for (long d : radicands) {
        if (d < 2) throw InvalidSpec("radicand must be >= 2: " + std::to_string(d));
        if (!is_square_free(d))
            throw InvalidSpec("radicand must be square-free: " + std::to_string(d));
    }
    for (std::size_t i = 1; i < radicands.size(); ++i)
        if (radicands[i] == radicands[i - 1])
            throw InvalidSpec("radicands must be pairwise distinct");
    // A subset product that is a perfect square would make the 2^k basis
    // linearly dependent and break the exact zero test.
    for (unsigned mask = 1; mask < (1u << radicands.size()); ++mask)
        if (__builtin_popcount(mask) >= 2 && subset_product_is_square(radicands, mask))
            throw InvalidSpec("radicands are multiplicatively dependent");
    data_ = std::make_shared<const detail::FieldData>(std::move(radicands));
}

const std::vector<long>& FieldSpec::radicands() const { return data_->radicands; }
int FieldSpec::radical_count() const { return static_cast<int>(data_->radicands.size()); }
int FieldSpec::degree() const { return 1 << data_->radicands.size(); }

bool FieldSpec::operator==(const FieldSpec& other) const {
    return data_ == other.data_ || data_->radicands == other.data_->radicands;
}

// ---- Ball ----

bool Ball::contains(const mpq_class& x) const {
    mpq_class diff = x - midpoint;
    return abs(diff) <= radius;
}

// ---- FieldElement ----

FieldElement::FieldElement() : field_(), coords_(1, mpq_class(0)) {}

FieldElement::FieldElement(mpq_class value, FieldSpec field) : field_(std::move(field)) {
    coords_.assign(field_.degree(), mpq_class(0));
    coords_[0] = std::move(value);
}

FieldElement::FieldElement(FieldSpec field, std::vector<mpq_class> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_.degree())
        throw InvalidSpec("coordinate count does not match field degree");
}

FieldElement FieldElement::zero(const FieldSpec& field) { return FieldElement(mpq_class(0), field); }
FieldElement FieldElement::one(const FieldSpec& field) { return FieldElement(mpq_class(1), field); }
FieldElement FieldElement::integer(long n, const FieldSpec& field) {
    return FieldElement(mpq_class(n), field);
}

FieldElement FieldElement::sqrt_of(long d, const FieldSpec& field) {
    const auto& ds = field.radicands();
    auto it = std::find(ds.begin(), ds.end(), d);
    if (it == ds.end())
        throw FieldMismatch("sqrt(" + std::to_string(d) + ") is not in this field");
    std::vector<mpq_class> coords(field.degree(), mpq_class(0));
    coords[1u << (it - ds.begin())] = 1;
    return FieldElement(field, std::move(coords));
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::promoted(const FieldSpec& superfield) const {
    if (field_ == superfield) return *this;
    const auto& sub = field_.radicands();
    const auto& sup = superfield.radicands();
    // Map each sub-radicand index to its position in the superfield.
    std::vector<int> pos(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
        auto it = std::find(sup.begin(), sup.end(), sub[i]);
        if (it == sup.end())
            throw FieldMismatch("target field does not contain radicand " + std::to_string(sub[i]));
        pos[i] = static_cast<int>(it - sup.begin());
    }
    std::vector<mpq_class> coords(superfield.degree(), mpq_class(0));
    for (std::size_t mask = 0; mask < coords_.size(); ++mask) {
        if (coords_[mask] == 0) continue;
        unsigned target = 0;
        for (std::size_t i = 0; i < sub.size(); ++i)
            if (mask & (1u << i)) target |= 1u << pos[i];
        coords[target] = coords_[mask];
    }
    return FieldElement(superfield, std::move(coords));
}

FieldElement FieldElement::operator-() const {
    std::vector<mpq_class> coords(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords[i] = -coords_[i];
    return FieldElement(field_, std::move(coords));
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        throw FieldMismatch("operands belong to different fields");
}
} // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    std::vector<mpq_class> coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = a.coords_[i] + b.coords_[i];
    return FieldElement(a.field_, std::move(coords));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    std::vector<mpq_class> coords(a.coords_.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = a.coords_[i] - b.coords_[i];
    return FieldElement(a.field_, std::move(coords));
}

const std::vector<mpz_class>& FieldElement::basis_products(const FieldSpec& f) {
    return f.data_->basis_products;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const auto& products = FieldElement::basis_products(a.field_);
    const std::size_t deg = a.coords_.size();
    std::vector<mpq_class> coords(deg, mpq_class(0));
    for (std::size_t s = 0; s < deg; ++s) {
        if (a.coords_[s] == 0) continue;
        for (std::size_t t = 0; t < deg; ++t) {
            if (b.coords_[t] == 0) continue;
            // b_S * b_T = prod_{i in S&T} d_i * b_{S xor T}
            mpq_class term = a.coords_[s] * b.coords_[t];
            const unsigned common = static_cast<unsigned>(s & t);
            if (common) term *= products[common];
            coords[s ^ t] += term;
        }
    }
    return FieldElement(a.field_, std::move(coords));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero field element");
    // Peel radicands from the top: a = u + v*sqrt(d); then
    // 1/a = conj(a) / (u^2 - v^2 d), and the denominator lives one level down.
    const int k = field_.radical_count();
    if (k == 0) return FieldElement(mpq_class(1) / coords_[0], field_);

    const unsigned top = 1u << (k - 1);
    const std::size_t deg = coords_.size();
    bool has_top = false;
    for (std::size_t i = 0; i < deg; ++i)
        if ((i & top) && coords_[i] != 0) has_top = true;

    if (!has_top) {
        // Element lies in the subfield; invert there and embed back.
        FieldSpec subfield(std::vector<long>(field_.radicands().begin(),
                                             field_.radicands().end() - 1));
        std::vector<mpq_class> sub_coords(deg >> 1);
        for (std::size_t i = 0; i < sub_coords.size(); ++i) sub_coords[i] = coords_[i];
        FieldElement sub_inv = FieldElement(subfield, std::move(sub_coords)).inverse();
        return sub_inv.promoted(field_);
    }

    // Conjugate over the top radicand.
    std::vector<mpq_class> conj_coords = coords_;
    for (std::size_t i = 0; i < deg; ++i)
        if (i & top) conj_coords[i] = -conj_coords[i];
    FieldElement conj(field_, std::move(conj_coords));

    FieldElement norm = *this * conj; // lives in the subfield (top coords vanish)
    return conj * norm.inverse();
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw DivisionByZero("division by zero field element");
    return a * b.inverse();
}

bool FieldElement::operator==(const FieldElement& other) const {
    return field_ == other.field_ && coords_ == other.coords_;
}

std::string FieldElement::to_string() const {
    std::ostringstream out;
    bool first = true;
    const auto& ds = field_.radicands();
    for (std::size_t mask = 0; mask < coords_.size(); ++mask) {
        if (coords_[mask] == 0) continue;
        if (!first) out << "+";
        out << "(" << coords_[mask].get_str() << ")";
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (mask & (1u << i)) out << "*sqrt(" << ds[i] << ")";
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw Error("unreachable arithmetic op");
}

// ---- ball evaluation and sign determination ----

int precision_cap() { return g_precision_cap.load(std::memory_order_relaxed); }
void set_precision_cap(int bits) {
    if (bits < 128) throw InvalidSpec("precision cap must be at least 128 bits");
    g_precision_cap.store(bits, std::memory_order_relaxed);
}

// Accesses FieldSpec internals for the evaluation cache.
class BallEvaluator {
public:
    // Directed-rounding enclosure of the element's value at precision `prec`.
    static void eval(const FieldElement& a, int prec, Ivl& out) {
        mpfr_set_prec(out.lo, prec);
        mpfr_set_prec(out.hi, prec);
        mpfr_set_zero(out.lo, 1);
        mpfr_set_zero(out.hi, 1);

        const auto& coords = a.coords();
        const detail::FieldData& data = *a.field().data_;
        const auto& roots = data.sqrt_bounds(prec);

        mpfr_t tlo, thi;
        mpfr_init2(tlo, prec);
        mpfr_init2(thi, prec);
        for (std::size_t mask = 0; mask < coords.size(); ++mask) {
            const mpq_class& c = coords[mask];
            if (c == 0) continue;
            if (mask == 0) {
                mpfr_set_q(tlo, c.get_mpq_t(), MPFR_RNDD);
                mpfr_set_q(thi, c.get_mpq_t(), MPFR_RNDU);
            } else if (sgn(c) > 0) {
                mpfr_set_q(tlo, roots[mask].first.get_mpq_t(), MPFR_RNDD);
                mpfr_mul_q(tlo, tlo, c.get_mpq_t(), MPFR_RNDD);
                mpfr_set_q(thi, roots[mask].second.get_mpq_t(), MPFR_RNDU);
                mpfr_mul_q(thi, thi, c.get_mpq_t(), MPFR_RNDU);
            } else {
                mpfr_set_q(tlo, roots[mask].second.get_mpq_t(), MPFR_RNDU);
                mpfr_mul_q(tlo, tlo, c.get_mpq_t(), MPFR_RNDD);
                mpfr_set_q(thi, roots[mask].first.get_mpq_t(), MPFR_RNDD);
                mpfr_mul_q(thi, thi, c.get_mpq_t(), MPFR_RNDU);
            }
            mpfr_add(out.lo, out.lo, tlo, MPFR_RNDD);
            mpfr_add(out.hi, out.hi, thi, MPFR_RNDU);
        }
        mpfr_clear(tlo);
        mpfr_clear(thi);
    }
};

Ball evaluate_ball(const FieldElement& a, int precision_bits) {
    if (precision_bits < 2) throw InvalidSpec("ball precision must be >= 2 bits");
    Ivl iv(precision_bits);
    BallEvaluator::eval(a, precision_bits, iv);
    mpq_class lo, hi;
    mpfr_get_q(lo.get_mpq_t(), iv.lo);
    mpfr_get_q(hi.get_mpq_t(), iv.hi);
    Ball ball;
    ball.midpoint = (lo + hi) / 2;
    ball.radius = (hi - lo) / 2;
    ball.precision_bits = precision_bits;
    return ball;
}

int sign_of(const FieldElement& a, int max_bits) {
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sgn(a.rational_part());
    const int cap = max_bits > 0 ? max_bits : precision_cap();
    Ivl iv(128);
    for (int prec = 128; prec <= cap; prec *= 2) {
        BallEvaluator::eval(a, prec, iv);
        if (mpfr_sgn(iv.lo) > 0) return 1;
        if (mpfr_sgn(iv.hi) < 0) return -1;
    }
    throw PrecisionExhausted("sign undecided at " + std::to_string(cap) +
                             " bits for nonzero element " + a.to_string());
}

long floor_of(const FieldElement& a, int max_bits) {
    if (a.is_rational()) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a.rational_part().get_num_mpz_t(),
                   a.rational_part().get_den_mpz_t());
        if (!q.fits_slong_p()) throw OutOfDomain("floor does not fit in long");
        return q.get_si();
    }
    const int cap = max_bits > 0 ? max_bits : precision_cap();
    // Get a candidate from a ball tight enough that at most one adjustment
    // step is ever needed; the exact sign tests below settle boundaries.
    Ball ball = evaluate_ball(a, 128);
    for (int prec = 256; ball.radius >= mpq_class(1, 4) && prec <= cap; prec *= 2)
        ball = evaluate_ball(a, prec);
    mpz_class cand;
    mpz_fdiv_q(cand.get_mpz_t(), ball.midpoint.get_num_mpz_t(), ball.midpoint.get_den_mpz_t());
    if (!cand.fits_slong_p()) throw OutOfDomain("floor does not fit in long");
    long m = cand.get_si();

    while (sign_of(a - FieldElement::integer(m, a.field()), max_bits) < 0) --m;
    while (sign_of(a - FieldElement::integer(m + 1, a.field()), max_bits) >= 0) ++m;
    return m;
}

int compare(const FieldElement& a, const FieldElement& b) { return sign_of(a - b); }
bool less(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
bool less_equal(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }

int rational_rank(std::span<const FieldElement> vectors) {
    if (vectors.empty()) return 0;
    const FieldSpec& field = vectors.front().field();
    std::vector<std::vector<mpq_class>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.field() != field) throw FieldMismatch("rank requires a common field");
        rows.push_back(v.coords());
    }
    const std::size_t cols = field.degree();
    int rank = 0;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
        std::size_t pivot = lead;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[lead]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][col] == 0) continue;
            mpq_class factor = rows[r][col] / rows[lead][col];
            for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[lead][c];
        }
        ++lead;
        ++rank;
    }
    return rank;
}

} // namespace palfac::realnum
