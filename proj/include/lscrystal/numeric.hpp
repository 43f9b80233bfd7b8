#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace lscrystal {

// All arithmetic in this library is exact. Integers are arbitrary precision
// and rationals are kept reduced with a positive denominator.  Expression
// templates are off so every operator yields a plain value.
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

enum class Errc {
    bad_cartan,
    zero_weight,
    not_star_orbit,
    negative_orbit,
    bad_order,
    not_decreasing,
    bad_sigmas,
    chain_violation,
    out_of_range,
    internal_non_integral,
    shape_mismatch,
    not_divisible,
    form_violation,
    not_applicable_form,
    non_termination,
    not_d2_shape,
    multiple_gaps,
    bit_limit,
    bad_config,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what, long detail = 0)
        : std::runtime_error(what), code_(code), detail_(detail) {}

    Errc code() const { return code_; }
    /// Extra context, e.g. the failing junction index of a chain violation.
    long detail() const { return detail_; }

  private:
    Errc code_;
    long detail_;
};

std::size_t bit_length(const Integer& x);

/// Cap on integer magnitude, from LSCRYSTAL_MAX_BITS (default 4096).
std::size_t max_integer_bits();
/// Override the cap for this process; 0 restores the environment default.
void set_max_integer_bits(std::size_t bits);
/// Throws Error{bit_limit} when |x| exceeds the cap.
void guard_magnitude(const Integer& x);

bool is_integral(const Rational& x);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Parses "p/q" or "p" into an exact rational.
Rational parse_fraction(const std::string& text);

inline std::size_t hash_integer(const Integer& x) { return boost::hash<Integer>{}(x); }

inline std::size_t hash_rational(const Rational& x) {
    std::size_t seed = hash_integer(boost::multiprecision::numerator(x));
    boost::hash_combine(seed, hash_integer(boost::multiprecision::denominator(x)));
    return seed;
}

}  // namespace lscrystal
