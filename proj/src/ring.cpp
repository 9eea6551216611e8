#include "qcs/ring.hpp"

#include <cmath>
#include <sstream>

namespace qcs {

namespace {
const std::complex<double> kOmega{M_SQRT1_2, M_SQRT1_2};
}

OmegaInt scale_sqrt2(OmegaInt x, int e) {
    if (e < 0) throw std::invalid_argument("negative sqrt2 scale");
    const int twos = e / 2;
    if (twos >= 62) {
        if (!x.is_zero()) throw OverflowError("ring coefficient overflow");
    } else if (twos > 0) {
        const __int128 f = __int128(1) << twos;
        x = {detail::checked_narrow(x.a * f), detail::checked_narrow(x.b * f), detail::checked_narrow(x.c * f),
             detail::checked_narrow(x.d * f)};
    }
    if (e & 1) x = x.times_sqrt2();
    return x;
}

std::complex<double> OmegaInt::to_complex() const {
    const auto w1 = kOmega, w2 = std::complex<double>{0.0, 1.0}, w3 = w1 * w2;
    return double(a) + double(b) * w1 + double(c) * w2 + double(d) * w3;
}

std::complex<double> RingScalar::to_complex() const { return num.to_complex() * std::pow(M_SQRT1_2, sde); }

std::string RingScalar::to_string() const {
    std::ostringstream os;
    os << '[' << num.a << ',' << num.b << ',' << num.c << ',' << num.d << ',' << sde << ']';
    return os.str();
}

}  // namespace qcs
