/*
 * Copyright (C) 2026 The avail Authors
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

#ifndef AVAIL__TIMEMAP_HPP
#define AVAIL__TIMEMAP_HPP

#include <avail/error.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace avail {

using TimeKey = std::int64_t;
using Duration = std::int64_t;

//==============================================================================
/// Ordered map from keys to values, stored as a red-black tree whose nodes are
/// also threaded into a doubly-linked list in key order. The tree answers
/// floor() in O(log n); the list gives O(1) next()/prev() once a node is found.
///
/// Nodes live in a slab and are addressed by Handle. A handle stays valid
/// until its own node is removed; rotations and other insertions or removals
/// never invalidate it. Using a stale handle throws InvalidHandle.
template<typename Key, typename Value>
class ThreadedRbMap
{
public:
  struct Handle
  {
    std::uint32_t index = 0;
    std::uint32_t generation = 0;

    friend bool operator==(const Handle&, const Handle&) = default;
  };

  ThreadedRbMap()
  {
    // Slot 0 is the black nil sentinel shared by all leaves.
    _nodes.emplace_back();
  }

  std::size_t size() const { return _size; }
  bool empty() const { return _size == 0; }

  /// Inserts a new key. Throws DuplicateKey if the key is already present.
  Handle insert(const Key& key, Value value)
  {
    std::uint32_t parent = kNil;
    std::uint32_t cur = _root;
    std::uint32_t pred = kNil;
    std::uint32_t succ = kNil;
    while (cur != kNil)
    {
      parent = cur;
      const Key& k = _nodes[cur].key;
      if (key < k)
      {
        succ = cur;
        cur = _nodes[cur].left;
      }
      else if (k < key)
      {
        pred = cur;
        cur = _nodes[cur].right;
      }
      else
      {
        throw DuplicateKey("key already present in time map");
      }
    }

    const std::uint32_t z = allocate(key, std::move(value));
    Node& n = _nodes[z];
    n.parent = parent;
    if (parent == kNil)
      _root = z;
    else if (key < _nodes[parent].key)
      _nodes[parent].left = z;
    else
      _nodes[parent].right = z;

    n.prev = pred;
    n.next = succ;
    if (pred != kNil)
      _nodes[pred].next = z;
    else
      _head = z;
    if (succ != kNil)
      _nodes[succ].prev = z;
    else
      _tail = z;

    ++_size;
    insert_fixup(z);
    return handle_of(z);
  }

  /// Removes a key and returns its value. Throws NotFound if absent.
  Value remove(const Key& key)
  {
    const std::uint32_t z = locate(key);
    if (z == kNil)
      throw NotFound("key not present in time map");

    Node& n = _nodes[z];
    if (n.prev != kNil)
      _nodes[n.prev].next = n.next;
    else
      _head = n.next;
    if (n.next != kNil)
      _nodes[n.next].prev = n.prev;
    else
      _tail = n.prev;

    erase_from_tree(z);
    --_size;

    Value out = std::move(*_nodes[z].value);
    release(z);
    return out;
  }

  void clear()
  {
    _nodes.resize(1);
    _nodes[kNil] = Node();
    _free.clear();
    _root = _head = _tail = kNil;
    _size = 0;
  }

  std::optional<Handle> find(const Key& key) const
  {
    return wrap(locate(key));
  }

  /// Node with the greatest key <= key, if any.
  std::optional<Handle> floor(const Key& key) const
  {
    std::uint32_t cur = _root;
    std::uint32_t best = kNil;
    while (cur != kNil)
    {
      if (key < _nodes[cur].key)
      {
        cur = _nodes[cur].left;
      }
      else
      {
        best = cur;
        if (!(_nodes[cur].key < key))
          break;
        cur = _nodes[cur].right;
      }
    }
    return wrap(best);
  }

  std::optional<Handle> first() const { return wrap(_head); }
  std::optional<Handle> last() const { return wrap(_tail); }

  std::optional<Handle> next(Handle h) const { return wrap(_nodes[check(h)].next); }
  std::optional<Handle> prev(Handle h) const { return wrap(_nodes[check(h)].prev); }

  const Key& key(Handle h) const { return _nodes[check(h)].key; }
  const Value& value(Handle h) const { return *_nodes[check(h)].value; }
  Value& value(Handle h) { return *_nodes[check(h)].value; }

  bool valid(Handle h) const
  {
    return h.index != kNil && h.index < _nodes.size()
      && _nodes[h.index].value.has_value()
      && _nodes[h.index].generation == h.generation;
  }

  /// Number of nodes on the longest root-to-leaf path.
  std::size_t height() const { return height_of(_root); }

  /// Describes the first structural violation found, or nothing if the tree
  /// satisfies BST order, the red-black rules, parent links, and the list
  /// matches the in-order traversal.
  std::optional<std::string> find_violation() const
  {
    if (_nodes[kNil].red)
      return std::string("nil sentinel is red");
    if (_root != kNil && _nodes[_root].red)
      return std::string("root is red");
    if (_root != kNil && _nodes[_root].parent != kNil)
      return std::string("root has a parent");

    std::vector<std::uint32_t> inorder;
    inorder.reserve(_size);
    std::string error;
    int black_height = -1;
    if (!validate_subtree(_root, 0, black_height, inorder, error))
      return error;
    if (inorder.size() != _size)
      return std::string("size does not match node count");

    for (std::size_t i = 1; i < inorder.size(); ++i)
    {
      if (!(_nodes[inorder[i - 1]].key < _nodes[inorder[i]].key))
        return std::string("in-order keys not strictly increasing");
    }

    std::uint32_t cur = _head;
    std::uint32_t prev = kNil;
    std::size_t i = 0;
    while (cur != kNil)
    {
      if (i >= inorder.size() || inorder[i] != cur)
        return std::string("list order differs from in-order traversal");
      if (_nodes[cur].prev != prev)
        return std::string("prev link inconsistent with next link");
      prev = cur;
      cur = _nodes[cur].next;
      ++i;
    }
    if (i != inorder.size())
      return std::string("list shorter than in-order traversal");
    if (_tail != prev)
      return std::string("tail does not point at the last node");
    return std::nullopt;
  }

  /// Graphviz rendering with nodes labelled "key:color".
  template<typename KeyPrinter>
  void write_dot(std::ostream& os, KeyPrinter&& print_key) const
  {
    os << "digraph timemap {\n";
    for (std::uint32_t cur = _head; cur != kNil; cur = _nodes[cur].next)
    {
      const Node& n = _nodes[cur];
      os << "  n" << cur << " [label=\"";
      print_key(os, n.key);
      os << ':' << (n.red ? "red" : "black") << "\"";
      os << (n.red ? ", color=red" : "") << "];\n";
      if (n.left != kNil)
        os << "  n" << cur << " -> n" << n.left << ";\n";
      if (n.right != kNil)
        os << "  n" << cur << " -> n" << n.right << ";\n";
      if (n.next != kNil)
        os << "  n" << cur << " -> n" << n.next << " [style=dashed];\n";
    }
    os << "}\n";
  }

  void write_dot(std::ostream& os) const
  {
    write_dot(os, [](std::ostream& o, const Key& k) { o << k; });
  }

private:
  static constexpr std::uint32_t kNil = 0;

  struct Node
  {
    Key key{};
    std::optional<Value> value;
    std::uint32_t parent = kNil;
    std::uint32_t left = kNil;
    std::uint32_t right = kNil;
    std::uint32_t prev = kNil;
    std::uint32_t next = kNil;
    std::uint32_t generation = 0;
    bool red = false;
  };

  std::uint32_t check(Handle h) const
  {
    if (!valid(h))
      throw InvalidHandle("stale or invalid time map handle");
    return h.index;
  }

  Handle handle_of(std::uint32_t i) const { return {i, _nodes[i].generation}; }

  std::optional<Handle> wrap(std::uint32_t i) const
  {
    if (i == kNil)
      return std::nullopt;
    return handle_of(i);
  }

  std::uint32_t locate(const Key& key) const
  {
    std::uint32_t cur = _root;
    while (cur != kNil)
    {
      if (key < _nodes[cur].key)
        cur = _nodes[cur].left;
      else if (_nodes[cur].key < key)
        cur = _nodes[cur].right;
      else
        return cur;
    }
    return kNil;
  }

  std::uint32_t allocate(const Key& key, Value value)
  {
    std::uint32_t i;
    if (!_free.empty())
    {
      i = _free.back();
      _free.pop_back();
    }
    else
    {
      i = static_cast<std::uint32_t>(_nodes.size());
      _nodes.emplace_back();
    }
    Node& n = _nodes[i];
    const std::uint32_t generation = n.generation;
    n = Node();
    n.generation = generation;
    n.key = key;
    n.value.emplace(std::move(value));
    n.red = true;
    return i;
  }

  void release(std::uint32_t i)
  {
    Node& n = _nodes[i];
    n.value.reset();
    ++n.generation;
    _free.push_back(i);
  }

  void rotate_left(std::uint32_t x)
  {
    const std::uint32_t y = _nodes[x].right;
    _nodes[x].right = _nodes[y].left;
    if (_nodes[y].left != kNil)
      _nodes[_nodes[y].left].parent = x;
    _nodes[y].parent = _nodes[x].parent;
    replace_child(_nodes[x].parent, x, y);
    _nodes[y].left = x;
    _nodes[x].parent = y;
  }

  void rotate_right(std::uint32_t x)
  {
    const std::uint32_t y = _nodes[x].left;
    _nodes[x].left = _nodes[y].right;
    if (_nodes[y].right != kNil)
      _nodes[_nodes[y].right].parent = x;
    _nodes[y].parent = _nodes[x].parent;
    replace_child(_nodes[x].parent, x, y);
    _nodes[y].right = x;
    _nodes[x].parent = y;
  }

  void replace_child(std::uint32_t parent, std::uint32_t old_child, std::uint32_t new_child)
  {
    if (parent == kNil)
      _root = new_child;
    else if (_nodes[parent].left == old_child)
      _nodes[parent].left = new_child;
    else
      _nodes[parent].right = new_child;
  }

  void insert_fixup(std::uint32_t z)
  {
    while (_nodes[_nodes[z].parent].red)
    {
      const std::uint32_t p = _nodes[z].parent;
      const std::uint32_t g = _nodes[p].parent;
      if (p == _nodes[g].left)
      {
        const std::uint32_t uncle = _nodes[g].right;
        if (_nodes[uncle].red)
        {
          _nodes[p].red = false;
          _nodes[uncle].red = false;
          _nodes[g].red = true;
          z = g;
          continue;
        }
        if (z == _nodes[p].right)
        {
          z = p;
          rotate_left(z);
        }
        _nodes[_nodes[z].parent].red = false;
        _nodes[g].red = true;
        rotate_right(g);
      }
      else
      {
        const std::uint32_t uncle = _nodes[g].left;
        if (_nodes[uncle].red)
        {
          _nodes[p].red = false;
          _nodes[uncle].red = false;
          _nodes[g].red = true;
          z = g;
          continue;
        }
        if (z == _nodes[p].left)
        {
          z = p;
          rotate_right(z);
        }
        _nodes[_nodes[z].parent].red = false;
        _nodes[g].red = true;
        rotate_left(g);
      }
    }
    _nodes[_root].red = false;
  }

  // Replaces the subtree rooted at u by the one rooted at v. The nil
  // sentinel's parent may be written here; erase_fixup relies on it.
  void transplant(std::uint32_t u, std::uint32_t v)
  {
    replace_child(_nodes[u].parent, u, v);
    _nodes[v].parent = _nodes[u].parent;
  }

  std::uint32_t minimum(std::uint32_t x) const
  {
    while (_nodes[x].left != kNil)
      x = _nodes[x].left;
    return x;
  }

  void erase_from_tree(std::uint32_t z)
  {
    std::uint32_t y = z;
    bool y_was_red = _nodes[y].red;
    std::uint32_t x;
    if (_nodes[z].left == kNil)
    {
      x = _nodes[z].right;
      transplant(z, x);
    }
    else if (_nodes[z].right == kNil)
    {
      x = _nodes[z].left;
      transplant(z, x);
    }
    else
    {
      y = minimum(_nodes[z].right);
      y_was_red = _nodes[y].red;
      x = _nodes[y].right;
      if (_nodes[y].parent == z)
      {
        _nodes[x].parent = y;
      }
      else
      {
        transplant(y, x);
        _nodes[y].right = _nodes[z].right;
        _nodes[_nodes[y].right].parent = y;
      }
      transplant(z, y);
      _nodes[y].left = _nodes[z].left;
      _nodes[_nodes[y].left].parent = y;
      _nodes[y].red = _nodes[z].red;
    }
    if (!y_was_red)
      erase_fixup(x);
    _nodes[kNil].parent = kNil;
  }

  void erase_fixup(std::uint32_t x)
  {
    while (x != _root && !_nodes[x].red)
    {
      const std::uint32_t p = _nodes[x].parent;
      if (x == _nodes[p].left)
      {
        std::uint32_t w = _nodes[p].right;
        if (_nodes[w].red)
        {
          _nodes[w].red = false;
          _nodes[p].red = true;
          rotate_left(p);
          w = _nodes[p].right;
        }
        if (!_nodes[_nodes[w].left].red && !_nodes[_nodes[w].right].red)
        {
          _nodes[w].red = true;
          x = p;
          continue;
        }
        if (!_nodes[_nodes[w].right].red)
        {
          _nodes[_nodes[w].left].red = false;
          _nodes[w].red = true;
          rotate_right(w);
          w = _nodes[p].right;
        }
        _nodes[w].red = _nodes[p].red;
        _nodes[p].red = false;
        _nodes[_nodes[w].right].red = false;
        rotate_left(p);
        x = _root;
      }
      else
      {
        std::uint32_t w = _nodes[p].left;
        if (_nodes[w].red)
        {
          _nodes[w].red = false;
          _nodes[p].red = true;
          rotate_right(p);
          w = _nodes[p].left;
        }
        if (!_nodes[_nodes[w].right].red && !_nodes[_nodes[w].left].red)
        {
          _nodes[w].red = true;
          x = p;
          continue;
        }
        if (!_nodes[_nodes[w].left].red)
        {
          _nodes[_nodes[w].right].red = false;
          _nodes[w].red = true;
          rotate_left(w);
          w = _nodes[p].left;
        }
        _nodes[w].red = _nodes[p].red;
        _nodes[p].red = false;
        _nodes[_nodes[w].left].red = false;
        rotate_right(p);
        x = _root;
      }
    }
    _nodes[x].red = false;
  }

  std::size_t height_of(std::uint32_t x) const
  {
    if (x == kNil)
      return 0;
    return 1 + std::max(height_of(_nodes[x].left), height_of(_nodes[x].right));
  }

  bool validate_subtree(
    std::uint32_t x,
    int blacks,
    int& black_height,
    std::vector<std::uint32_t>& inorder,
    std::string& error) const
  {
    if (x == kNil)
    {
      if (black_height < 0)
        black_height = blacks;
      else if (black_height != blacks)
      {
        error = "black height differs between paths";
        return false;
      }
      return true;
    }

    const Node& n = _nodes[x];
    if (!n.value.has_value())
    {
      error = "released node reachable from root";
      return false;
    }
    if (n.red && (_nodes[n.left].red || _nodes[n.right].red))
    {
      error = "red node has a red child";
      return false;
    }
    if (n.left != kNil && _nodes[n.left].parent != x)
    {
      error = "left child parent link broken";
      return false;
    }
    if (n.right != kNil && _nodes[n.right].parent != x)
    {
      error = "right child parent link broken";
      return false;
    }

    const int below = blacks + (n.red ? 0 : 1);
    if (!validate_subtree(n.left, below, black_height, inorder, error))
      return false;
    inorder.push_back(x);
    return validate_subtree(n.right, below, black_height, inorder, error);
  }

  std::vector<Node> _nodes;
  std::vector<std::uint32_t> _free;
  std::uint32_t _root = kNil;
  std::uint32_t _head = kNil;
  std::uint32_t _tail = kNil;
  std::size_t _size = 0;
};

} // namespace avail

#endif // AVAIL__TIMEMAP_HPP
