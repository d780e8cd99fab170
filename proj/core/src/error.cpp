#include "evoxplain/error.hpp"

namespace evoxplain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Transport: return "transport error";
    case ErrorKind::Remote: return "remote error";
    case ErrorKind::Protocol: return "protocol error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Refused: return "refused";
  }
  return "error";
}

}  // namespace evoxplain
