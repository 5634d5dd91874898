#pragma once

// Eigen traits for boost::multiprecision numbers (expression templates off).
// boost/multiprecision/eigen.hpp from Boost 1.74 does not build against Eigen 3.4.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <limits>

namespace cuspop {
namespace mp = boost::multiprecision;
using mpreal = mp::number<mp::cpp_bin_float<120>, mp::et_off>;
} // namespace cuspop

namespace Eigen {

template <class Backend>
struct NumTraits<boost::multiprecision::number<Backend, boost::multiprecision::et_off>>
    : GenericNumTraits<boost::multiprecision::number<Backend, boost::multiprecision::et_off>> {
    using T = boost::multiprecision::number<Backend, boost::multiprecision::et_off>;
    using Real = T;
    using NonInteger = T;
    using Literal = T;
    using Nested = T;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 10,
        MulCost = 40
    };
    static T epsilon() { return std::numeric_limits<T>::epsilon(); }
    static T dummy_precision() { return 1000 * epsilon(); }
    static T highest() { return (std::numeric_limits<T>::max)(); }
    static T lowest() { return std::numeric_limits<T>::lowest(); }
    static T infinity() { return std::numeric_limits<T>::infinity(); }
    static T quiet_NaN() { return std::numeric_limits<T>::quiet_NaN(); }
    static int digits10() { return std::numeric_limits<T>::digits10; }
};

} // namespace Eigen
