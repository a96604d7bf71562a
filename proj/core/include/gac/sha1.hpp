// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gac::io {

/// SHA-1 of a byte string, lowercase hex.
std::string sha1_hex(std::string_view data);

/// Git-style blob hash: sha1("blob <size>\0" + contents).
std::string git_blob_sha1(std::string_view contents);

/// Blob hash of a file on disk; throws on I/O failure.
std::string git_blob_sha1_file(const std::string& path);

}  // namespace gac::io
