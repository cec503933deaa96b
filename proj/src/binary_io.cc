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

#include "binary_io.hpp"

#include <bit>

#include "embcompress/common.hpp"

namespace embcompress::internal {

namespace {

template <typename U>
void PutLe(std::ostream& out, U v) {
  unsigned char buf[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf[i] = static_cast<unsigned char>(v >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(U));
}

template <typename U>
U GetLe(const unsigned char* buf) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(buf[i]) << (8 * i);
  }
  return v;
}

}  // namespace

void LeWriter::Bytes(std::string_view bytes) {
  out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}
void LeWriter::U8(std::uint8_t v) { PutLe(out_, v); }
void LeWriter::U32(std::uint32_t v) { PutLe(out_, v); }
void LeWriter::U64(std::uint64_t v) { PutLe(out_, v); }
void LeWriter::F32(float v) { PutLe(out_, std::bit_cast<std::uint32_t>(v)); }
void LeWriter::F64(double v) { PutLe(out_, std::bit_cast<std::uint64_t>(v)); }

void LeReader::Read(unsigned char* dst, std::size_t count) {
  in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(count));
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (got != count) {
    throw FormatError("truncated payload: needed " + std::to_string(count) +
                      " bytes at byte " + std::to_string(offset_) + ", got " +
                      std::to_string(got));
  }
  offset_ += count;
}

std::string LeReader::Bytes(std::size_t count) {
  std::string out(count, '\0');
  Read(reinterpret_cast<unsigned char*>(out.data()), count);
  return out;
}

std::uint8_t LeReader::U8() {
  unsigned char b[1];
  Read(b, 1);
  return b[0];
}

std::uint32_t LeReader::U32() {
  unsigned char b[4];
  Read(b, 4);
  return GetLe<std::uint32_t>(b);
}

std::uint64_t LeReader::U64() {
  unsigned char b[8];
  Read(b, 8);
  return GetLe<std::uint64_t>(b);
}

float LeReader::F32() { return std::bit_cast<float>(U32()); }
double LeReader::F64() { return std::bit_cast<double>(U64()); }

void LeReader::ExpectEnd() {
  if (in_.peek() != std::char_traits<char>::eof()) {
    throw FormatError("unexpected trailing bytes after byte " +
                      std::to_string(offset_));
  }
}

}  // namespace embcompress::internal
