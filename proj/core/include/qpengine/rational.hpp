#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace qp {

/* Exact rational scalar. GMP keeps the representation canonical
 * (reduced fraction, positive denominator) after canonicalize(). */
using Scalar = mpq_class;

class EngineError : public std::runtime_error {
public:
    EngineError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

inline Scalar parse_scalar(const std::string& s)
{
    if (s.empty())
        throw EngineError("BadScalar", "empty scalar literal");
    try {
        Scalar q(s);
        if (q.get_den() == 0)
            throw EngineError("BadScalar", "zero denominator in " + s);
        q.canonicalize();
        return q;
    }
    catch (const std::invalid_argument&) {
        throw EngineError("BadScalar", "cannot parse scalar " + s);
    }
}

/* "p" for integers, "p/q" otherwise; q always positive. */
inline std::string scalar_str(const Scalar& q)
{
    return q.get_str();
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

}  // namespace qp
