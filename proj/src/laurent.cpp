#include "evpos/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace evpos {

Rational exact_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r(mant);
    BigInt two(2);
    if (e >= 0) {
        r *= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(e)));
    } else {
        r /= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(-e)));
    }
    return r;
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace evpos
