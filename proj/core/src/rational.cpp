#include "qpengine/rational.hpp"

// header-only; this TU anchors the target
namespace qp {
}
