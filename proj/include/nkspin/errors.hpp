#pragma once
#include <stdexcept>
#include <string>

namespace nkspin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures map to CLI exit code 2, configuration problems to 1.
struct NumericError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct DecompositionResidual : NumericError { using NumericError::NumericError; };
struct NonUnitaryInput : NumericError { using NumericError::NumericError; };
struct StepControlFailure : NumericError { using NumericError::NumericError; };
struct NonConvergence : NumericError { using NumericError::NumericError; };
struct AliasedSampling : NumericError { using NumericError::NumericError; };
struct ExperimentFailed : NumericError { using NumericError::NumericError; };

struct ConfigParse : ConfigError { using ConfigError::ConfigError; };
struct FixtureMissing : ConfigError { using ConfigError::ConfigError; };

}  // namespace nkspin
