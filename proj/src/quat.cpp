#include "shimura/quat.hpp"

#include <boost/multiprecision/integer.hpp>
#include <sstream>

namespace shimura {

std::string to_fraction_string(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    Int n(s.substr(0, slash));
    Int d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
    return Rational(n, d);
}

std::vector<std::pair<Int, int>> factor(Int n) {
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> fs;
    if (n <= 1) return fs;
    for (Int p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fs.emplace_back(p, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

Int exact_isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("negative argument to exact_isqrt");
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) throw std::domain_error("not a perfect square: " + n.str());
    return r;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; p == 2 ? p = 3 : p += 2)
        if (n % p == 0) return false;
    return true;
}

namespace {
void require_same_algebra(const QuatElement& x, const QuatElement& y) {
    if (!(x.algebra() == y.algebra()))
        throw std::invalid_argument("mismatched quaternion algebras");
}
}  // namespace

std::string QuatElement::str() const {
    std::ostringstream os;
    static const char* names[4] = {"", "i", "j", "ij"};
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << c_[k].str() << (k ? "*" : "") << names[k];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

QuatElement operator+(const QuatElement& x, const QuatElement& y) {
    require_same_algebra(x, y);
    return QuatElement(x.algebra(),
                       {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]});
}

QuatElement operator-(const QuatElement& x, const QuatElement& y) {
    require_same_algebra(x, y);
    return QuatElement(x.algebra(),
                       {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]});
}

QuatElement operator-(const QuatElement& x) {
    return QuatElement(x.algebra(), {-x[0], -x[1], -x[2], -x[3]});
}

QuatElement operator*(const QuatElement& x, const QuatElement& y) {
    require_same_algebra(x, y);
    const Rational& a = x.algebra().alpha;
    const Rational& b = x.algebra().beta;
    // From i^2=a, j^2=b, ij=-ji:
    //   i*ij = a j,  ij*i = -a j,  j*ij = -b i,  ij*j = b i,  (ij)^2 = -ab.
    Rational z0 = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
    Rational z1 = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
    Rational z2 = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
    Rational z3 = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return QuatElement(x.algebra(), {z0, z1, z2, z3});
}

QuatElement scalar_mul(const Rational& s, const QuatElement& x) {
    return QuatElement(x.algebra(), {s * x[0], s * x[1], s * x[2], s * x[3]});
}

bool operator==(const QuatElement& x, const QuatElement& y) {
    return x.algebra() == y.algebra() && x.coeffs() == y.coeffs();
}

QuatElement conjugate(const QuatElement& x) {
    return QuatElement(x.algebra(), {x[0], -x[1], -x[2], -x[3]});
}

Rational reduced_trace(const QuatElement& x) { return 2 * x[0]; }

Rational reduced_norm(const QuatElement& x) {
    const Rational& a = x.algebra().alpha;
    const Rational& b = x.algebra().beta;
    return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

QuatElement inverse(const QuatElement& x) {
    Rational n = reduced_norm(x);
    if (n == 0) throw std::domain_error("element of reduced norm 0 has no inverse");
    return Rational(1) / n * conjugate(x);
}

QuatElement pow(const QuatElement& x, int n) {
    QuatElement base = n < 0 ? inverse(x) : x;
    int e = n < 0 ? -n : n;
    QuatElement acc = QuatElement::one(x.algebra());
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

QuatElement sign_normalized(const QuatElement& x) {
    for (int k = 0; k < 4; ++k) {
        if (x[k] > 0) return x;
        if (x[k] < 0) return -x;
    }
    return x;
}

}  // namespace shimura
