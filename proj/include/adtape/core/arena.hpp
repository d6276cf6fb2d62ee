// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License.  You
// may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied.  See the License for the specific language governing
// permissions and limitations under the License.

#ifndef ADTAPE_CORE_ARENA_HPP
#define ADTAPE_CORE_ARENA_HPP

#include <cstddef>
#include <cstdint>
#include <new>
#include <vector>

namespace adtape {

/// Bump allocator over a list of heap blocks.
///
/// Allocations are handed out front-to-back inside the current block; when a
/// request does not fit, the allocator moves on to the next reserved block or,
/// if none is large enough, reserves a fresh one of
/// max(request, 2 * current block size).  Nothing is ever moved and individual
/// allocations are never freed: recover() rewinds the cursor keeping the
/// blocks for reuse, free_all() releases everything but the initial block.
/// All regions are aligned to 8 bytes.
class Arena {
 public:
  static constexpr std::size_t initial_block_bytes = 64 * 1024;

  /// Cursor into the arena; enough state to rewind to an earlier point.
  struct Cursor {
    std::size_t block = 0;
    std::size_t offset = 0;
    std::size_t used = 0;
  };

  Arena() { add_block(initial_block_bytes); }

  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  ~Arena() {
    for (char* b : blocks_) ::operator delete(b);
  }

  /// Returns an 8-byte-aligned region of len usable bytes.
  void* alloc(std::size_t len) {
    const std::size_t aligned = align8(len);
    if (next_offset_ + aligned > sizes_[cur_block_]) move_to_next_block(aligned);
    char* result = blocks_[cur_block_] + next_offset_;
    next_offset_ += aligned;
    used_ += aligned;
    return result;
  }

  template <typename T>
  T* alloc_array(std::size_t n) {
    static_assert(alignof(T) <= 8);
    return static_cast<T*>(alloc(n * sizeof(T)));
  }

  Cursor cursor() const { return {cur_block_, next_offset_, used_}; }

  void rewind_to(const Cursor& c) {
    cur_block_ = c.block;
    next_offset_ = c.offset;
    used_ = c.used;
  }

  /// Rewinds to empty; reserved blocks are kept for the next episode.
  void recover() {
    cur_block_ = 0;
    next_offset_ = 0;
    used_ = 0;
  }

  /// As recover(), but also releases every block beyond the initial one.
  void free_all() {
    for (std::size_t i = 1; i < blocks_.size(); ++i) ::operator delete(blocks_[i]);
    blocks_.resize(1);
    sizes_.resize(1);
    recover();
  }

  std::size_t used_bytes() const { return used_; }

  std::size_t reserved_bytes() const {
    std::size_t total = 0;
    for (std::size_t s : sizes_) total += s;
    return total;
  }

 private:
  static std::size_t align8(std::size_t n) { return (n + 7u) & ~std::size_t{7}; }

  void add_block(std::size_t size) {
    blocks_.push_back(static_cast<char*>(::operator new(size)));
    sizes_.push_back(size);
  }

  void move_to_next_block(std::size_t aligned_len) {
    ++cur_block_;
    // Blocks kept by recover() are refilled before anything new is reserved.
    while (cur_block_ < blocks_.size() && sizes_[cur_block_] < aligned_len) ++cur_block_;
    if (cur_block_ == blocks_.size()) {
      const std::size_t doubled = 2 * sizes_.back();
      add_block(aligned_len > doubled ? aligned_len : doubled);
    }
    next_offset_ = 0;
  }

  std::vector<char*> blocks_;
  std::vector<std::size_t> sizes_;
  std::size_t cur_block_ = 0;
  std::size_t next_offset_ = 0;
  std::size_t used_ = 0;
};

}  // namespace adtape

#endif  // ADTAPE_CORE_ARENA_HPP
