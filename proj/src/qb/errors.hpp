#pragma once

#include <stdexcept>
#include <string>

namespace qb {

struct NotAUnit : std::runtime_error {
    explicit NotAUnit(const std::string& m) : std::runtime_error("NotAUnit: " + m) {}
};

struct TruncationUnderflow : std::runtime_error {
    explicit TruncationUnderflow(const std::string& m) : std::runtime_error("TruncationUnderflow: " + m) {}
};

struct BadParam : std::runtime_error {
    explicit BadParam(const std::string& m) : std::runtime_error("BadParam: " + m) {}
};

struct TruncExceeded : std::runtime_error {
    explicit TruncExceeded(const std::string& m) : std::runtime_error("TruncExceeded: " + m) {}
};

struct NonOrthogonalPoles : std::runtime_error {
    explicit NonOrthogonalPoles(const std::string& m) : std::runtime_error("NonOrthogonalPoles: " + m) {}
};

struct WindowOverflow : std::runtime_error {
    explicit WindowOverflow(const std::string& m) : std::runtime_error("WindowOverflow: " + m) {}
};

struct NotUnimodular : std::runtime_error {
    explicit NotUnimodular(const std::string& m) : std::runtime_error("NotUnimodular: " + m) {}
};

struct JetOrderExceeded : std::runtime_error {
    explicit JetOrderExceeded(const std::string& m) : std::runtime_error("JetOrderExceeded: " + m) {}
};

struct RecursionRankUnsupported : std::runtime_error {
    explicit RecursionRankUnsupported(const std::string& m)
        : std::runtime_error("RecursionRankUnsupported: " + m) {}
};

struct UnsupportedLevel : std::runtime_error {
    explicit UnsupportedLevel(const std::string& m) : std::runtime_error("UnsupportedLevel: " + m) {}
};

struct InsufficientTruncation : std::runtime_error {
    explicit InsufficientTruncation(const std::string& m)
        : std::runtime_error("InsufficientTruncation: " + m) {}
};

struct CertifyFailed : std::runtime_error {
    explicit CertifyFailed(const std::string& m) : std::runtime_error("CertifyFailed: " + m) {}
};

struct NotHomogeneous : std::runtime_error {
    explicit NotHomogeneous(const std::string& m) : std::runtime_error("NotHomogeneous: " + m) {}
};

struct NotInGeneratorRing : std::runtime_error {
    explicit NotInGeneratorRing(const std::string& m) : std::runtime_error("NotInGeneratorRing: " + m) {}
};

struct PochhammerZero : std::runtime_error {
    explicit PochhammerZero(const std::string& m) : std::runtime_error("PochhammerZero: " + m) {}
};

} // namespace qb
