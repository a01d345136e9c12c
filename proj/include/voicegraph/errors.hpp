#pragma once

#include <stdexcept>
#include <string>

namespace vg {

// Base class for every recoverable failure raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments. Mapped to CLI exit code 1.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data. Mapped to CLI exit code 2.
struct DataError : Error {
    using Error::Error;
};

// --- signal_core ---
struct MalformedWav final : DataError { using DataError::DataError; };
struct UnsupportedEncoding final : DataError { using DataError::DataError; };
struct WindowTooLong final : DataError { using DataError::DataError; };
struct TooShort final : DataError { using DataError::DataError; };
struct ClipTooShort final : DataError { using DataError::DataError; };

// --- visibility_graph ---
struct NonIncreasingTime final : DataError { using DataError::DataError; };
struct NoPeaks final : DataError { using DataError::DataError; };

// --- graph_features ---
struct Disconnected final : DataError { using DataError::DataError; };
struct TooSmall final : DataError { using DataError::DataError; };

// --- audio_features ---
struct BadFftSize final : ConfigError { using ConfigError::ConfigError; };
struct BadBand final : ConfigError { using ConfigError::ConfigError; };
struct EmptyFrames final : DataError { using DataError::DataError; };
struct WrongColumnCount final : DataError { using DataError::DataError; };
struct NonNumericCell final : DataError { using DataError::DataError; };
struct DuplicateId final : DataError { using DataError::DataError; };

// --- learn ---
struct SingleClass final : DataError { using DataError::DataError; };
struct EmptyData final : DataError { using DataError::DataError; };
struct DimensionMismatch final : DataError { using DataError::DataError; };
struct EmptyScores final : DataError { using DataError::DataError; };
struct BadC final : ConfigError { using ConfigError::ConfigError; };
struct MissingScore final : DataError { using DataError::DataError; };
struct UntrainedFusion final : ConfigError { using ConfigError::ConfigError; };
struct LengthMismatch final : DataError { using DataError::DataError; };

// --- pipeline ---
struct ManifestInvalid final : DataError { using DataError::DataError; };
struct ModelMissing final : DataError { using DataError::DataError; };
struct FamilyMismatch final : DataError { using DataError::DataError; };

} // namespace vg
