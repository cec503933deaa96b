// Copyright 2026 The embcompress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Little-endian encoding helpers shared by the EMB1 and PRJ1 codecs.
// Values are assembled byte by byte so the host byte order never matters.

#ifndef EMBCOMPRESS_SRC_BINARY_IO_HPP_
#define EMBCOMPRESS_SRC_BINARY_IO_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace embcompress::internal {

class LeWriter {
 public:
  explicit LeWriter(std::ostream& out) : out_(out) {}

  void Bytes(std::string_view bytes);
  void U8(std::uint8_t v);
  void U32(std::uint32_t v);
  void U64(std::uint64_t v);
  void F32(float v);
  void F64(double v);

 private:
  std::ostream& out_;
};

// Every read throws FormatError naming the byte offset when the stream ends
// early.
class LeReader {
 public:
  explicit LeReader(std::istream& in) : in_(in) {}

  std::string Bytes(std::size_t count);
  std::uint8_t U8();
  std::uint32_t U32();
  std::uint64_t U64();
  float F32();
  double F64();

  std::uint64_t offset() const { return offset_; }
  // Throws FormatError if any byte remains.
  void ExpectEnd();

 private:
  void Read(unsigned char* dst, std::size_t count);

  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace embcompress::internal

#endif  // EMBCOMPRESS_SRC_BINARY_IO_HPP_
