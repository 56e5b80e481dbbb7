#include "wolct/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <string>

namespace wolct {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

DiagnosticSink& sink() {
    static DiagnosticSink s = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
    return s;
}

}  // namespace

DiagnosticSink set_diagnostic_sink(DiagnosticSink s) {
    std::lock_guard lock(sink_mutex());
    auto old = std::move(sink());
    sink() = std::move(s);
    return old;
}

void emit_diagnostic(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (sink()) sink()(message);
}

}  // namespace wolct
