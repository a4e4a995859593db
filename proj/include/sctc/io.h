// include/sctc/io.h

// Copyright 2026  The sctc-mdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SCTC_IO_H_
#define SCTC_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sctc/matrix.h"

namespace sctc {

// Matrix CSV: first line "T,K", then T lines of K comma-separated values.
// Malformed content throws kParse; unreadable files throw kIo.
Matrix ReadMatrixCsv(std::istream &in);
Matrix ReadMatrixCsv(const std::filesystem::path &path);
void WriteMatrixCsv(std::ostream &out, const Matrix &m);
void WriteMatrixCsv(const std::filesystem::path &path, const Matrix &m);

std::string ReadTextFile(const std::filesystem::path &path);

}  // namespace sctc

#endif  // SCTC_IO_H_
