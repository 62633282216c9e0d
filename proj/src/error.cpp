#include "navforge/error.hpp"

namespace navforge {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidDate: return "InvalidDate";
    case Errc::DateOutOfRange: return "DateOutOfRange";
    case Errc::ScaleOverflow: return "ScaleOverflow";
    case Errc::NegativeAge: return "NegativeAge";
    case Errc::InvalidSubframeId: return "InvalidSubframeId";
    case Errc::FieldOverflow: return "FieldOverflow";
    case Errc::MissingField: return "MissingField";
    case Errc::NegativeInterval: return "NegativeInterval";
    case Errc::NonPositiveAxis: return "NonPositiveAxis";
    case Errc::HalfWeekExceeded: return "HalfWeekExceeded";
    case Errc::MissingHeaderEnd: return "MissingHeaderEnd";
    case Errc::MalformedNumber: return "MalformedNumber";
    case Errc::MissingValue: return "MissingValue";
    case Errc::MalformedEpoch: return "MalformedEpoch";
    case Errc::TruncatedRecord: return "TruncatedRecord";
    case Errc::InvalidRecord: return "InvalidRecord";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InsufficientSatellites: return "InsufficientSatellites";
    case Errc::SingularGeometry: return "SingularGeometry";
  }
  return "Unknown";
}

}  // namespace navforge
