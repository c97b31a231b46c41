/*
 * Copyright 2026 The popctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef POPCTL_FORMAT_HPP_
#define POPCTL_FORMAT_HPP_

#include <charconv>
#include <string>

namespace popctl {

/// Shortest decimal representation that round-trips the exact double.
/// Locale-independent, so emitted files are byte-stable across runs.
inline void append_double(std::string& out, double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;  // 32 chars always suffice for shortest double output
  out.append(buf, end);
}

inline std::string format_double(double value) {
  std::string out;
  append_double(out, value);
  return out;
}

}  // namespace popctl

#endif  // POPCTL_FORMAT_HPP_
