#include "optmod/rational.hpp"

#include <stdexcept>

#include "optmod/errors.hpp"

namespace optmod {

Rational parse_fraction(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0)
            throw InvalidInput("zero denominator in '" + text + "'");
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("malformed fraction '" + text + "'");
    }
}

std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p())
        throw CapacityError("integer " + z.get_str() + " exceeds 64 bits");
    return z.get_si();
}

}  // namespace optmod
