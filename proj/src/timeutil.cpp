#include "pidinst/timeutil.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace pidinst::timeutil {

namespace {

std::string format(std::time_t seconds, long micros) {
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(micros % 1000000));
  return buf;
}

}  // namespace

std::string now_utc_iso() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto secs = time_point_cast<seconds>(now);
  auto micros = duration_cast<microseconds>(now - secs).count();
  return format(system_clock::to_time_t(secs), micros);
}

std::string next_microsecond(std::string_view iso) {
  std::tm tm{};
  long micros = 0;
  if (std::sscanf(std::string(iso).c_str(), "%d-%d-%dT%d:%d:%d.%ldZ", &tm.tm_year, &tm.tm_mon,
                  &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &micros) != 7) {
    throw std::invalid_argument("not an ISO timestamp: " + std::string(iso));
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  std::time_t seconds = timegm(&tm);
  ++micros;
  if (micros >= 1000000) {
    micros = 0;
    ++seconds;
  }
  return format(seconds, micros);
}

}  // namespace pidinst::timeutil
