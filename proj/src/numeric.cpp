#include "lscrystal/numeric.hpp"

#include <atomic>
#include <cstdlib>

namespace lscrystal {

std::size_t bit_length(const Integer& x) {
    if (x == 0) return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

namespace {

std::size_t env_max_bits() {
    const char* raw = std::getenv("LSCRYSTAL_MAX_BITS");
    if (raw == nullptr || *raw == '\0') return 4096;
    char* end = nullptr;
    unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0' || value == 0)
        throw Error(Errc::bad_config, "LSCRYSTAL_MAX_BITS must be a positive integer");
    return static_cast<std::size_t>(value);
}

std::atomic<std::size_t> g_override{0};

}  // namespace

std::size_t max_integer_bits() {
    std::size_t v = g_override.load(std::memory_order_relaxed);
    if (v != 0) return v;
    static const std::size_t from_env = env_max_bits();
    return from_env;
}

void set_max_integer_bits(std::size_t bits) { g_override.store(bits, std::memory_order_relaxed); }

void guard_magnitude(const Integer& x) {
    if (bit_length(x) > max_integer_bits())
        throw Error(Errc::bit_limit, "integer exceeds LSCRYSTAL_MAX_BITS (" +
                                         std::to_string(max_integer_bits()) + " bits)");
}

bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
    if (is_integral(x)) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

Rational parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw Error(Errc::bad_config, "fraction with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw Error(Errc::bad_config, "cannot parse fraction '" + text + "': " + e.what());
    }
}

}  // namespace lscrystal
