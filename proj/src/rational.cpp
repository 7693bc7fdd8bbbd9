#include "tt/rational.hpp"

#include <stdexcept>

namespace tt {

std::string to_string(const rat& q) {
    rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

rat parse_rat(const std::string& s) {
    rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::string decimal(const rat& q, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    rat v = abs(q) * scale + rat(1, 2);
    mpz_class n = v.get_num() / v.get_den();
    std::string body = n.get_str();
    if ((int)body.size() <= digits) body = std::string(digits + 1 - body.size(), '0') + body;
    std::string out = (q < 0 && n != 0 ? "-" : "");
    out += body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    return out;
}

rat rat_sqrt_floor(const rat& q, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    rat v = q * scale * scale;
    mpz_class n = v.get_num() / v.get_den();
    mpz_class r = sqrt(n);
    return rat(r, scale);
}

}  // namespace tt
