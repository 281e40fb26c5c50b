#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tsrnn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Exit-code mapping: 1 usage/config, 2 data, 3 numerical.
struct InvalidInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tsrnn
