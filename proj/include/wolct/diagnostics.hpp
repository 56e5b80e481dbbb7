#pragma once

#include <functional>
#include <string_view>

namespace wolct {

using DiagnosticSink = std::function<void(std::string_view)>;

/// Replaces the warning sink (default: stderr). Returns the previous sink.
DiagnosticSink set_diagnostic_sink(DiagnosticSink sink);
void emit_diagnostic(std::string_view message);

}  // namespace wolct
