#include "optomech/error.hpp"

#include <atomic>
#include <iostream>

namespace optomech {

namespace {

void stderr_sink(std::string_view message) { std::cerr << "warning: " << message << '\n'; }

std::atomic<WarningSink> g_sink{&stderr_sink};

}  // namespace

void warn(std::string_view message) { g_sink.load()(message); }

WarningSink set_warning_sink(WarningSink sink) {
  return g_sink.exchange(sink ? sink : &stderr_sink);
}

}  // namespace optomech
