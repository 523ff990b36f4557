"""Graph helpers on adjacency mappings ``node -> iterable of nodes``."""

from collections import deque


def reachable(starts, neighbours):
    seen = set(starts)
    queue = deque(starts)
    while queue:
        v = queue.popleft()
        for w in neighbours(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def tarjan_scc(vertices, neighbours):
    """Strongly connected components in reverse topological order.

    Every component is listed after all components it has edges into, so a
    solver can process the list front to back. Iterative, so deep graphs do
    not hit the recursion limit.
    """
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    result = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(neighbours(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(neighbours(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result
